#include <algorithm>
#include <cmath>

#include "ispear/ml.hpp"

namespace ispear::ml {

void LabeledSet::validate() const {
  if (labels.empty() || features.rows() == 0)
    throw Error(ErrorCode::Empty, "empty data set");
  if (static_cast<std::size_t>(features.rows()) != labels.size())
    throw Error(ErrorCode::BadFormat, "feature/label count mismatch");
  if (!features.allFinite())
    throw Error(ErrorCode::BadFormat, "non-finite feature value");
}

static void require_both_classes(const LabeledSet& data) {
  bool pos = false, neg = false;
  for (Label l : data.labels) (l == Label::emotional ? pos : neg) = true;
  if (!pos || !neg)
    throw Error(ErrorCode::BothClassesRequired, "training data must contain both classes");
}

void fit_standardizer(const LabeledSet& fit_on, std::vector<double>& mean,
                      std::vector<double>& sd) {
  const auto d = static_cast<std::size_t>(fit_on.features.cols());
  const double n = static_cast<double>(fit_on.features.rows());
  mean.resize(d);
  sd.resize(d);
  for (std::size_t j = 0; j < d; ++j) {
    const auto col = fit_on.features.col(static_cast<Eigen::Index>(j));
    mean[j] = col.mean();
    double var = (col.array() - mean[j]).square().sum() / n;
    sd[j] = var > 0.0 ? std::sqrt(var) : 1.0;
  }
}

void apply_standardizer(LabeledSet& set, const std::vector<double>& mean,
                        const std::vector<double>& sd) {
  for (std::size_t j = 0; j < mean.size(); ++j) {
    auto col = set.features.col(static_cast<Eigen::Index>(j));
    col = (col.array() - mean[j]) / sd[j];
  }
  set.standardize_mean = mean;
  set.standardize_sd = sd;
}

double PolyKernel::operator()(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const {
  return std::pow(gamma * a.dot(b) + coef0, degree);
}

double SvmModel::decision_value(const Eigen::VectorXd& x) const {
  if (x.size() != support_vectors.cols())
    throw Error(ErrorCode::DimensionMismatch, "feature dimension mismatch");
  double sum = bias;
  for (Eigen::Index i = 0; i < support_vectors.rows(); ++i)
    sum += alpha_y[static_cast<std::size_t>(i)] * kernel(support_vectors.row(i).transpose(), x);
  return sum;
}

std::vector<double> svm_train_alphas(const LabeledSet& data, const SvmConfig& cfg,
                                     SvmModel* model_out) {
  data.validate();
  require_both_classes(data);
  if (cfg.kernel.degree < 1) throw Error(ErrorCode::BadConfig, "kernel degree must be >= 1");
  if (!(cfg.C > 0.0)) throw Error(ErrorCode::BadConfig, "C must be positive");

  const auto n = static_cast<std::size_t>(data.features.rows());
  PolyKernel kernel = cfg.kernel;
  if (kernel.gamma == 0.0) kernel.gamma = 1.0 / static_cast<double>(data.features.cols());

  std::vector<double> y(n), box(n);
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = data.labels[i] == Label::emotional ? 1.0 : -1.0;
    box[i] = cfg.C * (data.labels[i] == Label::non_emotional
                          ? cfg.class_weight_non_emotional
                          : 1.0);
  }

  auto kv = [&](std::size_t i, std::size_t j) {
    return kernel(data.features.row(static_cast<Eigen::Index>(i)).transpose(),
                  data.features.row(static_cast<Eigen::Index>(j)).transpose());
  };
  std::vector<double> k_diag(n);
  for (std::size_t i = 0; i < n; ++i) k_diag[i] = kv(i, i);

  std::vector<double> alpha(n, 0.0);
  std::vector<double> f(n, 0.0);  // sum_j alpha_j y_j K(i,j), bias excluded
  double b = 0.0;
  Rng rng(cfg.seed);

  auto is_free = [&](std::size_t i) { return alpha[i] > 0.0 && alpha[i] < box[i]; };

  // Joint optimization of one alpha pair (Platt's takeStep).
  auto take_step = [&](std::size_t i, std::size_t j) {
    if (i == j) return false;
    const double ei = f[i] + b - y[i];
    const double ej = f[j] + b - y[j];

    double lo, hi;
    if (y[i] != y[j]) {
      lo = std::max(0.0, alpha[j] - alpha[i]);
      hi = std::min(box[j], box[i] + alpha[j] - alpha[i]);
    } else {
      lo = std::max(0.0, alpha[i] + alpha[j] - box[i]);
      hi = std::min(box[j], alpha[i] + alpha[j]);
    }
    if (lo >= hi) return false;

    const double kij = kv(i, j);
    const double eta = 2.0 * kij - k_diag[i] - k_diag[j];
    if (eta >= 0.0) return false;  // non-negative curvature along the pair

    double aj = std::clamp(alpha[j] - y[j] * (ei - ej) / eta, lo, hi);
    if (std::abs(aj - alpha[j]) < 1e-12 * (aj + alpha[j] + 1e-12)) return false;

    const double ai = alpha[i] + y[i] * y[j] * (alpha[j] - aj);
    const double dai = ai - alpha[i];
    const double daj = aj - alpha[j];

    const double b1 = b - ei - y[i] * dai * k_diag[i] - y[j] * daj * kij;
    const double b2 = b - ej - y[i] * dai * kij - y[j] * daj * k_diag[j];
    if (ai > 0.0 && ai < box[i])
      b = b1;
    else if (aj > 0.0 && aj < box[j])
      b = b2;
    else
      b = 0.5 * (b1 + b2);

    alpha[i] = ai;
    alpha[j] = aj;
    for (std::size_t m = 0; m < n; ++m)
      f[m] += y[i] * dai * kv(i, m) + y[j] * daj * kv(j, m);

    if (cfg.on_update) cfg.on_update(alpha, b);
    return true;
  };

  // Second-multiplier choice: the max-|E difference| free point first, then
  // seeded-offset scans over the free set and the whole set.
  auto examine = [&](std::size_t j) {
    const double ej = f[j] + b - y[j];
    const double r = y[j] * ej;
    if (!((r < -cfg.tol && alpha[j] < box[j]) || (r > cfg.tol && alpha[j] > 0.0)))
      return false;

    std::size_t best = n;
    double best_gap = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!is_free(i)) continue;
      const double gap = std::abs(f[i] + b - y[i] - ej);
      if (gap > best_gap) {
        best_gap = gap;
        best = i;
      }
    }
    if (best < n && take_step(best, j)) return true;

    const std::size_t offset = rng.uniform_int(n);
    for (std::size_t step = 0; step < n; ++step) {
      const std::size_t i = (offset + step) % n;
      if (is_free(i) && take_step(i, j)) return true;
    }
    for (std::size_t step = 0; step < n; ++step) {
      const std::size_t i = (offset + step) % n;
      if (take_step(i, j)) return true;
    }
    return false;
  };

  // Platt's outer loop: full sweeps alternate with free-subset sweeps; a
  // full sweep with no progress means every example meets KKT within tol.
  bool converged = false;
  bool examine_all = true;
  int sweeps = 0;
  while (sweeps < cfg.max_passes) {
    ++sweeps;
    int changed = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (examine_all || is_free(j))
        if (examine(j)) ++changed;
    }
    if (examine_all) {
      if (changed == 0) {
        converged = true;
        break;
      }
      examine_all = false;
    } else if (changed == 0) {
      examine_all = true;
    }
  }

  if (model_out) {
    SvmModel model;
    model.kernel = kernel;
    model.C = cfg.C;
    model.bias = b;
    model.converged = converged;
    std::vector<std::size_t> sv;
    for (std::size_t i = 0; i < n; ++i)
      if (alpha[i] > 1e-12) sv.push_back(i);
    model.support_vectors.resize(static_cast<Eigen::Index>(sv.size()), data.features.cols());
    model.alpha_y.resize(sv.size());
    for (std::size_t s = 0; s < sv.size(); ++s) {
      model.support_vectors.row(static_cast<Eigen::Index>(s)) =
          data.features.row(static_cast<Eigen::Index>(sv[s]));
      model.alpha_y[s] = alpha[sv[s]] * y[sv[s]];
    }
    *model_out = std::move(model);
  }
  return alpha;
}

SvmModel train_svm(const LabeledSet& data, const SvmConfig& cfg) {
  SvmModel model;
  svm_train_alphas(data, cfg, &model);
  return model;
}

double svm_dual_objective(const LabeledSet& data, const std::vector<double>& alphas,
                          const PolyKernel& kernel) {
  const auto n = static_cast<std::size_t>(data.features.rows());
  double obj = 0.0;
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = data.labels[i] == Label::emotional ? 1.0 : -1.0;
    obj += alphas[i];
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (alphas[i] == 0.0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (alphas[j] == 0.0) continue;
      obj -= 0.5 * alphas[i] * alphas[j] * y[i] * y[j] *
             kernel(data.features.row(static_cast<Eigen::Index>(i)).transpose(),
                    data.features.row(static_cast<Eigen::Index>(j)).transpose());
    }
  }
  return obj;
}

Label predict(const SvmModel& model, const Eigen::VectorXd& x) {
  return model.decision_value(x) >= 0.0 ? Label::emotional : Label::non_emotional;
}

}  // namespace ispear::ml
