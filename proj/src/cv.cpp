#include <algorithm>
#include <cmath>

#include "ispear/ml.hpp"

namespace ispear::ml {

std::vector<FoldSplit> stratified_kfold(const LabeledSet& data, int k, std::uint64_t seed) {
  data.validate();
  if (k < 2) throw Error(ErrorCode::BadConfig, "k must be >= 2");

  std::vector<std::size_t> by_class[2];
  for (std::size_t i = 0; i < data.size(); ++i)
    by_class[static_cast<int>(data.labels[i])].push_back(i);
  for (int c = 0; c < 2; ++c)
    if (by_class[c].size() < static_cast<std::size_t>(k))
      throw Error(ErrorCode::TooFewSamples,
                  "class " + std::to_string(c) + " has " + std::to_string(by_class[c].size()) +
                      " members, need at least " + std::to_string(k));

  // Shuffle within class, then deal contiguous chunks; the first n mod k
  // folds take one extra item, so per-fold class counts differ by <= 1.
  std::vector<FoldSplit> folds(static_cast<std::size_t>(k));
  for (int c = 0; c < 2; ++c) {
    auto& indices = by_class[c];
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(c) + 17));
    rng.shuffle(indices);
    const std::size_t base = indices.size() / static_cast<std::size_t>(k);
    const std::size_t extra = indices.size() % static_cast<std::size_t>(k);
    std::size_t pos = 0;
    for (std::size_t f = 0; f < static_cast<std::size_t>(k); ++f) {
      std::size_t take = base + (f < extra ? 1 : 0);
      for (std::size_t t = 0; t < take; ++t)
        folds[f].test.push_back(indices[pos++]);
    }
  }

  for (std::size_t f = 0; f < folds.size(); ++f) {
    auto& fold = folds[f];
    std::sort(fold.test.begin(), fold.test.end());
    fold.train.reserve(data.size() - fold.test.size());
    std::size_t t = 0;
    for (std::size_t i = 0; i < data.size(); ++i) {
      if (t < fold.test.size() && fold.test[t] == i)
        ++t;
      else
        fold.train.push_back(i);
    }
  }
  return folds;
}

namespace {

LabeledSet subset(const LabeledSet& data, const std::vector<std::size_t>& indices) {
  LabeledSet out;
  out.features.resize(static_cast<Eigen::Index>(indices.size()), data.features.cols());
  out.labels.reserve(indices.size());
  for (std::size_t r = 0; r < indices.size(); ++r) {
    out.features.row(static_cast<Eigen::Index>(r)) =
        data.features.row(static_cast<Eigen::Index>(indices[r]));
    out.labels.push_back(data.labels[indices[r]]);
  }
  return out;
}

double matrix_accuracy(const ConfusionMatrix& cm) {
  const auto total = cm.total();
  return total == 0 ? 0.0
                    : static_cast<double>(cm.counts[0][0] + cm.counts[1][1]) /
                          static_cast<double>(total);
}

}  // namespace

EvalReport evaluate_cv(const LabeledSet& data, const CvConfig& cfg) {
  auto folds = stratified_kfold(data, cfg.folds, cfg.seed);

  EvalReport report;
  report.seed = cfg.seed;
  double accuracy_sum = 0.0;

  for (std::size_t f = 0; f < folds.size(); ++f) {
    LabeledSet train = subset(data, folds[f].train);
    LabeledSet test = subset(data, folds[f].test);
    if (cfg.standardize) {
      std::vector<double> mean, sd;
      fit_standardizer(train, mean, sd);
      apply_standardizer(train, mean, sd);
      apply_standardizer(test, mean, sd);
    }

    const std::uint64_t fold_seed = derive_seed(cfg.seed, f + 101);
    ConfusionMatrix cm;
    if (cfg.model == ModelKind::svm) {
      SvmConfig svm_cfg = cfg.svm;
      svm_cfg.seed = fold_seed;
      SvmModel model = train_svm(train, svm_cfg);
      for (std::size_t i = 0; i < test.size(); ++i) {
        Label got = predict(model, test.features.row(static_cast<Eigen::Index>(i)).transpose());
        cm.counts[static_cast<int>(test.labels[i])][static_cast<int>(got)]++;
      }
    } else {
      SigmoidConfig sig_cfg = cfg.sigmoid;
      sig_cfg.seed = fold_seed;
      SigmoidModel model = train_sigmoid(train, sig_cfg);
      for (std::size_t i = 0; i < test.size(); ++i) {
        Label got = predict(model, test.features.row(static_cast<Eigen::Index>(i)).transpose());
        cm.counts[static_cast<int>(test.labels[i])][static_cast<int>(got)]++;
      }
    }

    accuracy_sum += matrix_accuracy(cm);
    report.pooled += cm;
    report.fold_matrices.push_back(cm);
  }

  report.metrics = confusion_metrics(report.pooled);
  report.pooled_accuracy = report.metrics.accuracy;
  report.mean_fold_accuracy = accuracy_sum / static_cast<double>(folds.size());

  if (cfg.model == ModelKind::svm) {
    PolyKernel k = cfg.svm.kernel;
    double gamma = k.gamma == 0.0 ? 1.0 / static_cast<double>(data.features.cols()) : k.gamma;
    report.model_description = "svm (poly degree " + std::to_string(k.degree) + ", coef0 " +
                               fmt_g9(k.coef0) + ", gamma " + fmt_g9(gamma) + ", C " +
                               fmt_g9(cfg.svm.C) + ")";
  } else {
    report.model_description = "sigmoid (lr " + fmt_g9(cfg.sigmoid.learning_rate) +
                               ", epochs " + std::to_string(cfg.sigmoid.epochs) + ")";
  }
  return report;
}

std::size_t ConfusionMatrix::total() const {
  return counts[0][0] + counts[0][1] + counts[1][0] + counts[1][1];
}

ConfusionMatrix& ConfusionMatrix::operator+=(const ConfusionMatrix& other) {
  for (int a = 0; a < 2; ++a)
    for (int p = 0; p < 2; ++p) counts[a][p] += other.counts[a][p];
  return *this;
}

}  // namespace ispear::ml
