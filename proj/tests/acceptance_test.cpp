// Acceptance suite: one criterion per function, one PASS/FAIL line each.
// Exit status is the number of failed criteria.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "ispear/core.hpp"
#include "ispear/corpus.hpp"
#include "ispear/dsp.hpp"
#include "ispear/ml.hpp"
#include "ispear/stats.hpp"

using namespace ispear;
namespace fs = std::filesystem;

namespace {

struct Checker {
  bool ok = true;
  std::string first_failure;

  void expect(bool condition, const std::string& message) {
    if (!condition && ok) {
      ok = false;
      first_failure = message;
    }
  }
};

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

double round1(double percent) { return std::round(percent * 10.0) / 10.0; }

int run_cli(const std::string& args) {
  std::string cmd = std::string(ISPEAR_BIN) + " " + args + " 2>/dev/null";
  int status = std::system(cmd.c_str());
  return status == -1 ? -1 : WEXITSTATUS(status);
}

std::uint64_t hash_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return 0;
  std::uint64_t h = 1469598103934665603ULL;
  char buf[65536];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 1099511628211ULL;
    }
  }
  return h;
}

// ---- criterion 1: reference confusion-table arithmetic --------------------------------

void criterion_table_arithmetic(Checker& c) {
  ml::ConfusionMatrix svm;
  svm.counts = {{{684, 456}, {336, 1944}}};
  auto m = ml::confusion_metrics(svm);
  c.expect(round1(m.accuracy * 100.0) == 76.8, "svm accuracy != 76.8");
  c.expect(round1(*m.per_class[0].precision_table * 100.0) == 60.0,
           "non-emotional precision != 60");
  c.expect(round1(*m.per_class[1].precision_table * 100.0) == 85.3,
           "emotional precision != 85.3");
  c.expect(round1(*m.per_class[0].recall_table * 100.0) == 67.1,
           "non-emotional recall != 67.1");
  c.expect(round1(*m.per_class[1].recall_table * 100.0) == 81.0, "emotional recall != 81");

  ml::ConfusionMatrix nn;
  nn.counts = {{{0, 1140}, {0, 2280}}};
  auto mn = ml::confusion_metrics(nn);
  c.expect(round1(mn.accuracy * 100.0) == 66.7, "nn accuracy != 66.7");
  c.expect(!mn.per_class[0].recall_table.has_value(), "nn non-emotional recall defined");
  c.expect(round1(*mn.per_class[0].precision_table * 100.0) == 0.0, "nn precision != 0");
  c.expect(round1(*mn.per_class[1].precision_table * 100.0) == 100.0, "nn precision != 100");
  c.expect(round1(*mn.per_class[1].recall_table * 100.0) == 66.7, "nn recall != 66.7");
}

// ---- criterion 2: DWT suite -------------------------------------------------

void criterion_dwt(Checker& c) {
  const double rt2 = std::sqrt(2.0);
  for (int order = 1; order <= 4; ++order) {
    auto f = dsp::daubechies_filters(order);
    const std::size_t len = f.lowpass.size();
    double sum = std::accumulate(f.lowpass.begin(), f.lowpass.end(), 0.0);
    double norm2 = std::inner_product(f.lowpass.begin(), f.lowpass.end(),
                                      f.lowpass.begin(), 0.0);
    c.expect(std::abs(sum - rt2) < 1e-12, "lowpass sum != sqrt(2), order " + fmt(order));
    c.expect(std::abs(norm2 - 1.0) < 1e-12, "lowpass norm != 1, order " + fmt(order));
    for (std::size_t m = 1; 2 * m < len; ++m) {
      double dot = 0.0;
      for (std::size_t k = 0; k + 2 * m < len; ++k)
        dot += f.lowpass[k] * f.lowpass[k + 2 * m];
      c.expect(std::abs(dot) < 1e-12, "shift-orthogonality broken, order " + fmt(order));
    }
    for (int mm = 0; mm < order; ++mm) {
      double moment = 0.0;
      for (std::size_t k = 0; k < len; ++k)
        moment += f.highpass[k] * std::pow(static_cast<double>(k), mm);
      c.expect(std::abs(moment) < 1e-9, "vanishing moment broken, order " + fmt(order));
    }
  }

  Rng rng(20240);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 * (1 + rng.uniform_int(2048));  // even in [2, 4096]
    std::vector<double> x(n);
    for (auto& v : x) v = rng.uniform(-1.0, 1.0);
    const double energy = std::inner_product(x.begin(), x.end(), x.begin(), 0.0);
    for (int order = 1; order <= 4; ++order) {
      auto coeffs = dsp::dwt_level1(x, order);
      auto back = dsp::idwt_level1(coeffs, order);
      double pr_err = 0.0;
      for (std::size_t i = 0; i < n; ++i) pr_err = std::max(pr_err, std::abs(back[i] - x[i]));
      double parseval =
          std::inner_product(coeffs.approx.begin(), coeffs.approx.end(),
                             coeffs.approx.begin(), 0.0) +
          std::inner_product(coeffs.detail.begin(), coeffs.detail.end(),
                             coeffs.detail.begin(), 0.0);
      c.expect(pr_err < 1e-10, "reconstruction error " + fmt(pr_err) + " at n=" + fmt(n));
      c.expect(std::abs(parseval - energy) < 1e-10,
               "parseval error " + fmt(std::abs(parseval - energy)) + " at n=" + fmt(n));
    }
  }
}

// ---- criterion 3: LMM correctness -------------------------------------------

struct Sim {
  stats::DataTable table;
  stats::ModelSpec spec;
};

Sim simulate_lmm(Rng& rng, int subjects, int reps, double sigma_b, double sigma_e,
                 double intercept, double beta_neutral, double beta_sad) {
  const char* levels[3] = {"happy", "neutral", "sad"};
  std::vector<double> y;
  std::vector<std::string> emotion, subject;
  for (int s = 0; s < subjects; ++s) {
    const double b = rng.normal(0.0, sigma_b);
    for (int e = 0; e < 3; ++e)
      for (int r = 0; r < reps; ++r) {
        double effect = e == 1 ? beta_neutral : (e == 2 ? beta_sad : 0.0);
        y.push_back(intercept + effect + b + rng.normal(0.0, sigma_e));
        emotion.push_back(levels[e]);
        subject.push_back("s" + std::to_string(s));
      }
  }
  Sim sim;
  sim.table.add_numeric("y", std::move(y));
  sim.table.add_categorical("emotion", std::move(emotion));
  sim.table.add_categorical("subject", std::move(subject));
  sim.spec.response = "y";
  sim.spec.fixed = {{"emotion", "happy"}};
  sim.spec.random_group = "subject";
  return sim;
}

void criterion_lmm(Checker& c) {
  Rng rng(31550);

  // (a) theta pinned at 0 matches OLS; (b) the free fit beats a dense grid.
  for (int trial = 0; trial < 50; ++trial) {
    const int subjects = 5 + static_cast<int>(rng.uniform_int(12));
    const int reps = 2 + static_cast<int>(rng.uniform_int(4));
    const double sigma_b = (trial % 3 == 0) ? 0.0 : rng.uniform(0.2, 2.0);
    auto sim = simulate_lmm(rng, subjects, reps, sigma_b, rng.uniform(0.5, 2.0), 5.0,
                            rng.normal(0.0, 1.0), rng.normal(0.0, 1.0));
    stats::LmmProfile profile(sim.spec, sim.table);

    auto pinned = profile.fit(0.0);
    auto ols = stats::fit_ols(sim.spec, sim.table);
    c.expect(std::abs(pinned.log_lik - ols.log_lik) < 1e-6,
             "pinned theta=0 log-lik differs from OLS by " +
                 fmt(std::abs(pinned.log_lik - ols.log_lik)));

    auto fit = profile.fit();
    double best_grid = 1e300;
    for (int i = 0; i < 1000; ++i)
      best_grid =
          std::min(best_grid, profile.deviance_at(stats::LmmProfile::kThetaMax * i / 999.0));
    c.expect(fit.deviance <= best_grid + 1e-6,
             "grid beats optimizer by " + fmt(fit.deviance - best_grid));
  }

  // (c) fixed-effect recovery at the corpus shape.
  int covered = 0;
  const int datasets = 200;
  for (int d = 0; d < datasets; ++d) {
    auto sim = simulate_lmm(rng, 38, 30, 300.0, 1420.2, 9331.8, -282.0, 32.5);
    auto fit = stats::fit_lmm(sim.spec, sim.table);
    const double truth[3] = {9331.8, -282.0, 32.5};
    bool all_in = true;
    for (int j = 0; j < 3; ++j)
      if (std::abs(fit.beta(j) - truth[j]) > 3.0 * fit.beta_se(j)) all_in = false;
    if (all_in) ++covered;
  }
  c.expect(covered >= static_cast<int>(0.95 * datasets),
           "3-SE coverage only " + fmt(covered) + "/200");

  // (d) null-model Monte Carlo LRT calibration.
  int rejections = 0;
  const int reps = 1000;
  for (int r = 0; r < reps; ++r) {
    auto sim = simulate_lmm(rng, 38, 5, 0.8, 1.0, 10.0, 0.0, 0.0);
    auto full = stats::fit_lmm(sim.spec, sim.table);
    stats::ModelSpec null_spec = sim.spec;
    null_spec.fixed.clear();
    auto null_fit = stats::fit_lmm(null_spec, sim.table);
    if (stats::lrt(full, null_fit).p_value < 0.05) ++rejections;
  }
  const double rate = static_cast<double>(rejections) / reps;
  c.expect(rate >= 0.03 && rate <= 0.07,
           "null rejection rate " + fmt(rate) + " outside [0.03, 0.07]");
}

// ---- criterion 4: special functions ------------------------------------------

template <typename F>
double simpson(F f, double a, double b, int intervals) {
  double h = (b - a) / intervals;
  double sum = f(a) + f(b);
  for (int i = 1; i < intervals; ++i) sum += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  return sum * h / 3.0;
}

void criterion_special_functions(Checker& c) {
  c.expect(std::abs(stats::chi_square_sf(5.991, 2) - std::exp(-2.9955)) < 1e-10,
           "chi2 sf(5.991, 2) != exp(-2.9955)");
  for (int d = 1; d <= 20; ++d)
    c.expect(std::abs(stats::f_sf(1.0, d, d) - 0.5) < 1e-10,
             "f_sf(1, d, d) != 0.5 at d=" + fmt(d));
  c.expect(std::abs(stats::f_sf(3.0, 2, 2) - 0.25) < 1e-10, "f_sf(3, 2, 2) != 0.25");

  // Quadrature oracle: P(chi2_1 > x) = 1 - 2 * integral of the standard
  // normal density over [0, sqrt(x)].
  auto phi = [](double t) {
    return std::exp(-0.5 * t * t) / std::sqrt(2.0 * 3.14159265358979323846);
  };
  const double oracle = 1.0 - 2.0 * simpson(phi, 0.0, std::sqrt(3.841459), 20000);
  c.expect(std::abs(stats::chi_square_sf(3.841459, 1) - oracle) < 1e-10,
           "chi2 sf(3.841459, 1) differs from quadrature");
  c.expect(std::abs(stats::chi_square_sf(3.841459, 1) - 0.0500) < 1e-4,
           "chi2 sf(3.841459, 1) != 0.0500");
}

// ---- criterion 5: SVM suite ----------------------------------------------------

void criterion_svm(Checker& c) {
  ml::LabeledSet xor_set;
  xor_set.features.resize(4, 2);
  xor_set.features << 0, 0, 1, 1, 0, 1, 1, 0;
  xor_set.labels = {ml::Label::non_emotional, ml::Label::non_emotional, ml::Label::emotional,
                    ml::Label::emotional};
  ml::SvmConfig cfg;
  cfg.kernel = {2, 1.0, 1.0};
  cfg.C = 100.0;
  cfg.tol = 1e-8;
  cfg.max_passes = 100000;

  ml::SvmModel model;
  auto alphas = ml::svm_train_alphas(xor_set, cfg, &model);
  c.expect(model.converged, "xor smo did not converge");
  for (int i = 0; i < 4; ++i)
    c.expect(ml::predict(model, xor_set.features.row(i).transpose()) == xor_set.labels[i],
             "xor point misclassified");

  // Brute-force QP oracle: enumerate bound patterns of the 4-variable dual.
  Eigen::MatrixXd q(4, 4);
  Eigen::Vector4d y(-1, -1, 1, 1);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      q(i, j) = y(i) * y(j) * model.kernel(xor_set.features.row(i).transpose(),
                                           xor_set.features.row(j).transpose());
  double best = -1e300;
  for (int code = 0; code < 81; ++code) {
    int state[4], cc = code;
    for (int i = 0; i < 4; ++i) {
      state[i] = cc % 3;
      cc /= 3;
    }
    std::vector<int> free_idx;
    Eigen::Vector4d a = Eigen::Vector4d::Zero();
    for (int i = 0; i < 4; ++i) {
      if (state[i] == 1) a(i) = cfg.C;
      if (state[i] == 2) free_idx.push_back(i);
    }
    const int f = static_cast<int>(free_idx.size());
    bool feasible = true;
    if (f > 0) {
      Eigen::MatrixXd sys = Eigen::MatrixXd::Zero(f + 1, f + 1);
      Eigen::VectorXd rhs = Eigen::VectorXd::Zero(f + 1);
      for (int r = 0; r < f; ++r) {
        for (int s = 0; s < f; ++s) sys(r, s) = q(free_idx[r], free_idx[s]);
        sys(r, f) = y(free_idx[r]);
        sys(f, r) = y(free_idx[r]);
        double bound = 0.0;
        for (int i = 0; i < 4; ++i)
          if (state[i] == 1) bound += q(free_idx[r], i) * cfg.C;
        rhs(r) = 1.0 - bound;
      }
      double bound_y = 0.0;
      for (int i = 0; i < 4; ++i)
        if (state[i] == 1) bound_y += y(i) * cfg.C;
      rhs(f) = -bound_y;
      Eigen::FullPivLU<Eigen::MatrixXd> lu(sys);
      if (!lu.isInvertible()) continue;
      Eigen::VectorXd sol = lu.solve(rhs);
      for (int r = 0; r < f; ++r) {
        if (sol(r) < -1e-9 || sol(r) > cfg.C + 1e-9) feasible = false;
        a(free_idx[r]) = sol(r);
      }
    }
    if (!feasible || std::abs(a.dot(y)) > 1e-9) continue;
    best = std::max(best, a.sum() - 0.5 * a.dot(q * a));
  }
  std::vector<double> av(alphas.begin(), alphas.end());
  const double got = ml::svm_dual_objective(xor_set, av, model.kernel);
  c.expect(std::abs(got - best) < 1e-4,
           "xor dual objective off by " + fmt(std::abs(got - best)));

  // Dual constraints on converged models, and separable 1-D training.
  Rng rng(555);
  for (int trial = 0; trial < 5; ++trial) {
    ml::LabeledSet set;
    const int per_side = 4 + static_cast<int>(rng.uniform_int(5));
    set.features.resize(2 * per_side, 1);
    for (int i = 0; i < per_side; ++i) {
      set.features(i, 0) = -2.0 - rng.uniform(0.0, 1.0);
      set.labels.push_back(ml::Label::non_emotional);
    }
    for (int i = 0; i < per_side; ++i) {
      set.features(per_side + i, 0) = 2.0 + rng.uniform(0.0, 1.0);
      set.labels.push_back(ml::Label::emotional);
    }
    ml::SvmConfig sep_cfg;
    sep_cfg.kernel = {1, 0.0, 1.0};
    sep_cfg.C = 10.0;
    sep_cfg.tol = 1e-6;
    ml::SvmModel sep_model;
    auto sep_alphas = ml::svm_train_alphas(set, sep_cfg, &sep_model);
    c.expect(sep_model.converged, "separable problem did not converge");
    double sum_ay = 0.0;
    for (std::size_t i = 0; i < sep_alphas.size(); ++i) {
      c.expect(sep_alphas[i] >= -1e-12 && sep_alphas[i] <= sep_cfg.C + 1e-12,
               "alpha outside the box");
      sum_ay += sep_alphas[i] * (set.labels[i] == ml::Label::emotional ? 1.0 : -1.0);
    }
    c.expect(std::abs(sum_ay) < 1e-8, "sum alpha_i y_i != 0");
    for (int i = 0; i < set.features.rows(); ++i)
      c.expect(ml::predict(sep_model, set.features.row(i).transpose()) ==
                   set.labels[static_cast<std::size_t>(i)],
               "separable training error");
  }
}

// ---- criterion 6: sigmoid gradient check ---------------------------------------

void criterion_sigmoid_gradient(Checker& c) {
  Rng rng(909);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 4 + static_cast<int>(rng.uniform_int(20));
    const int d = 1 + static_cast<int>(rng.uniform_int(4));
    ml::LabeledSet data;
    data.features.resize(n, d);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < d; ++j) data.features(i, j) = rng.normal(0.0, 2.0);
      data.labels.push_back(rng.uniform() < 0.5 ? ml::Label::non_emotional
                                                : ml::Label::emotional);
    }
    Eigen::VectorXd w(d);
    for (int j = 0; j < d; ++j) w(j) = rng.normal(0.0, 1.5);
    const double b = rng.normal(0.0, 1.5);

    Eigen::VectorXd grad(d);
    double grad_b = 0.0;
    ml::sigmoid_loss_grad(data, w, b, 1.0, &grad, &grad_b);

    const double eps = 1e-5;
    for (int j = 0; j < d; ++j) {
      Eigen::VectorXd hi = w, lo = w;
      hi(j) += eps;
      lo(j) -= eps;
      const double fd = (ml::sigmoid_loss_grad(data, hi, b, 1.0, nullptr, nullptr) -
                         ml::sigmoid_loss_grad(data, lo, b, 1.0, nullptr, nullptr)) /
                        (2.0 * eps);
      worst = std::max(worst, std::abs(grad(j) - fd) / std::max(1e-8, std::abs(fd)));
    }
    const double fd_b = (ml::sigmoid_loss_grad(data, w, b + eps, 1.0, nullptr, nullptr) -
                         ml::sigmoid_loss_grad(data, w, b - eps, 1.0, nullptr, nullptr)) /
                        (2.0 * eps);
    worst = std::max(worst, std::abs(grad_b - fd_b) / std::max(1e-8, std::abs(fd_b)));
  }
  c.expect(worst < 1e-5, "worst relative gradient error " + fmt(worst));
}

// ---- criterion 7: end-to-end synthetic reproduction ------------------------------

struct AnalysisRow {
  std::string response, comparison;
  double p = -1.0;
};

std::vector<AnalysisRow> parse_analysis(const std::string& path) {
  std::vector<AnalysisRow> rows;
  auto lines = read_lines(path);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto fields = split_csv_line(lines[i]);
    if (fields.size() != 5) continue;
    rows.push_back({fields[0], fields[1], std::stod(fields[4])});
  }
  return rows;
}

double parse_accuracy(const std::string& path) {
  for (const auto& line : read_lines(path)) {
    auto fields = split_csv_line(line);
    if (fields.size() == 2 && fields[0] == "accuracy") return std::stod(fields[1]);
  }
  return -1.0;
}

void criterion_end_to_end(Checker& c) {
  const fs::path root =
      fs::temp_directory_path() / ("ispear_accept_" + std::to_string(::getpid()));
  std::error_code ec;
  fs::remove_all(root, ec);

  auto run_pipeline = [&](const std::string& tag) -> fs::path {
    const fs::path dir = root / tag;
    fs::create_directories(dir);
    const std::string corpus_dir = (dir / "corpus").string();
    const std::string features = (dir / "features.csv").string();
    c.expect(run_cli("synth --subjects 38 --words 30 --seed 42 --out " + corpus_dir) == 0,
             "synth failed");
    c.expect(run_cli("extract --manifest " + corpus_dir + "/manifest.csv --strict-shape "
                     "--out " + features) == 0,
             "extract failed");
    c.expect(run_cli("analyze --features " + features + " --out " +
                     (dir / "analysis").string()) == 0,
             "analyze failed");
    c.expect(run_cli("evaluate --features " + features + " --out " +
                     (dir / "eval").string()) == 0,
             "evaluate failed");
    return dir;
  };

  const fs::path run1 = run_pipeline("run1");
  if (!c.ok) {
    fs::remove_all(root, ec);
    return;
  }

  // Table II significance pattern: duration is the only significant feature.
  auto rows = parse_analysis((run1 / "analysis" / "analysis.csv").string());
  int checked = 0;
  for (const auto& row : rows) {
    if (row.comparison != "emotion_fixed") continue;
    ++checked;
    if (row.response == "duration")
      c.expect(row.p < 0.05, "duration emotion p = " + fmt(row.p) + " not significant");
    else
      c.expect(row.p > 0.05, row.response + " emotion p = " + fmt(row.p) + " significant");
  }
  c.expect(checked == 6, "expected 6 emotion comparisons, saw " + fmt(checked));

  // Classifier ordering: SVM beats both the majority baseline and the neuron.
  const double svm_acc = parse_accuracy((run1 / "eval" / "eval_svm.csv").string());
  const double sigmoid_acc = parse_accuracy((run1 / "eval" / "eval_sigmoid.csv").string());
  const double baseline = 2280.0 / 3420.0;
  c.expect(svm_acc > baseline,
           "svm accuracy " + fmt(svm_acc) + " not above baseline " + fmt(baseline));
  c.expect(svm_acc > sigmoid_acc,
           "svm accuracy " + fmt(svm_acc) + " not above sigmoid " + fmt(sigmoid_acc));

  // Determinism: a second full run is byte-identical, WAVs included.
  const fs::path run2 = run_pipeline("run2");
  if (c.ok) {
    const char* files[] = {"corpus/manifest.csv",       "corpus/synth_config.json",
                           "features.csv",              "analysis/analysis.csv",
                           "analysis/analysis.txt",     "analysis/gender_summary.csv",
                           "eval/eval_svm.csv",         "eval/eval_sigmoid.csv",
                           "eval/evaluation.txt"};
    for (const char* f : files)
      c.expect(hash_file((run1 / f).string()) == hash_file((run2 / f).string()) &&
                   hash_file((run1 / f).string()) != 0,
               std::string("output differs between runs: ") + f);
    auto manifest = corpus::load_manifest((run1 / "corpus" / "manifest.csv").string(), true);
    bool wavs_match = true;
    for (const auto& rec : manifest.records)
      if (hash_file((run1 / "corpus" / rec.path).string()) !=
          hash_file((run2 / "corpus" / rec.path).string()))
        wavs_match = false;
    c.expect(wavs_match, "generated audio differs between runs");
  }

  fs::remove_all(root, ec);
}

// ---- criterion 8: stratified 10-fold exactness ------------------------------------

void criterion_stratified_folds(Checker& c) {
  ml::LabeledSet data;
  data.features = Eigen::MatrixXd::Zero(3420, 1);
  for (int i = 0; i < 3420; ++i)
    data.labels.push_back(i < 1140 ? ml::Label::non_emotional : ml::Label::emotional);
  auto folds = ml::stratified_kfold(data, 10, 42);
  c.expect(folds.size() == 10, "expected 10 folds");
  std::vector<int> seen(3420, 0);
  for (const auto& fold : folds) {
    std::size_t non_emotional = 0, emotional = 0;
    for (auto idx : fold.test) {
      ++seen[idx];
      (data.labels[idx] == ml::Label::non_emotional ? non_emotional : emotional)++;
    }
    c.expect(non_emotional == 114, "fold has " + fmt(non_emotional) + " non-emotional");
    c.expect(emotional == 228, "fold has " + fmt(emotional) + " emotional");
  }
  for (int count : seen)
    c.expect(count == 1, "folds are not a disjoint exhaustive partition");
}

struct Criterion {
  int id;
  const char* name;
  void (*fn)(Checker&);
  double budget_s;
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {1, "reference confusion-table arithmetic", criterion_table_arithmetic, 1.0},
      {2, "DWT reconstruction, Parseval and filter invariants", criterion_dwt, 10.0},
      {3, "linear mixed model fitting", criterion_lmm, 300.0},
      {4, "chi-square and F tail probabilities", criterion_special_functions, 1.0},
      {5, "SMO against the brute-force dual", criterion_svm, 30.0},
      {6, "sigmoid gradient vs finite differences", criterion_sigmoid_gradient, 5.0},
      {7, "end-to-end synthetic reproduction", criterion_end_to_end, 300.0},
      {8, "stratified 10-fold exactness", criterion_stratified_folds, 30.0},
  };

  int failures = 0;
  for (const auto& criterion : criteria) {
    Checker checker;
    const auto start = std::chrono::steady_clock::now();
    criterion.fn(checker);
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    checker.expect(elapsed < criterion.budget_s,
                   "runtime " + fmt(elapsed) + "s exceeds " + fmt(criterion.budget_s) + "s");
    std::printf("criterion %d: %-52s %s (%.2fs)%s%s\n", criterion.id, criterion.name,
                checker.ok ? "PASS" : "FAIL", elapsed, checker.ok ? "" : " - ",
                checker.ok ? "" : checker.first_failure.c_str());
    if (!checker.ok) ++failures;
  }
  return failures;
}
