#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ispear/core.hpp"

namespace ispear::ml {

enum class Label : int { non_emotional = 0, emotional = 1 };

/// Feature matrix (n x d) plus binary labels. When standardized, the
/// per-column location/scale used is recorded so prediction can apply the
/// identical transform.
struct LabeledSet {
  Eigen::MatrixXd features;
  std::vector<Label> labels;
  std::vector<double> standardize_mean;  // empty -> not standardized
  std::vector<double> standardize_sd;

  std::size_t size() const { return labels.size(); }
  void validate() const;  // throws Empty / BadFormat / BothClassesRequired
};

/// Fits mean/SD on `fit_on` and applies them to `apply_to` in place.
/// Zero-variance columns keep scale 1.
void fit_standardizer(const LabeledSet& fit_on, std::vector<double>& mean,
                      std::vector<double>& sd);
void apply_standardizer(LabeledSet& set, const std::vector<double>& mean,
                        const std::vector<double>& sd);

// -- SVM (SMO) -----------------------------------------------------------------

struct PolyKernel {
  int degree = 3;
  double coef0 = 1.0;
  double gamma = 0.0;  // 0 -> 1/d at training time

  double operator()(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const;
};

struct SvmConfig {
  PolyKernel kernel;
  double C = 1.0;
  double tol = 1e-3;          // KKT tolerance
  int max_passes = 2000;      // total sweep budget
  std::uint64_t seed = 1;     // second-multiplier choice
  double class_weight_non_emotional = 1.0;  // multiplies C for that class

  /// Observer invoked after every accepted pair update (alphas, bias);
  /// used by tests to check dual feasibility at every iteration.
  std::function<void(const std::vector<double>&, double)> on_update;
};

struct SvmModel {
  PolyKernel kernel;
  double C = 1.0;
  double bias = 0.0;
  Eigen::MatrixXd support_vectors;   // rows
  std::vector<double> alpha_y;       // alpha_i * y_i per support vector
  bool converged = true;

  double decision_value(const Eigen::VectorXd& x) const;
};

/// Sequential minimal optimization of the soft-margin dual. Deterministic
/// given cfg.seed. Throws BothClassesRequired / BadConfig; non-convergence
/// within max_passes is flagged on the model, not thrown.
SvmModel train_svm(const LabeledSet& data, const SvmConfig& cfg);

/// Dual objective sum(alpha) - 1/2 sum alpha_i alpha_j y_i y_j K_ij of the
/// model's coefficients; the brute-force QP oracle in the tests compares
/// against this.
double svm_dual_objective(const LabeledSet& data, const std::vector<double>& alphas,
                          const PolyKernel& kernel);

/// Full alpha vector in training order (zeros for non-support rows).
std::vector<double> svm_train_alphas(const LabeledSet& data, const SvmConfig& cfg,
                                     SvmModel* model_out = nullptr);

// -- Single sigmoid neuron --------------------------------------------------------

struct SigmoidConfig {
  double learning_rate = 0.5;
  int epochs = 2000;
  std::uint64_t seed = 1;
  double class_weight_non_emotional = 1.0;
};

struct SigmoidModel {
  Eigen::VectorXd weights;
  double bias = 0.0;

  double probability(const Eigen::VectorXd& x) const;
};

/// Full-batch gradient descent on the cross-entropy loss; weight init is a
/// small seeded uniform. Throws BothClassesRequired, DivergedLoss.
SigmoidModel train_sigmoid(const LabeledSet& data, const SigmoidConfig& cfg);

/// Cross-entropy loss and its analytic gradient at (weights, bias); the
/// finite-difference oracle in the tests drives this directly.
double sigmoid_loss_grad(const LabeledSet& data, const Eigen::VectorXd& weights, double bias,
                         double class_weight_non_emotional, Eigen::VectorXd* grad_w,
                         double* grad_b);

/// Decision rules. Ties (decision value 0, probability exactly 0.5) go to
/// the emotional class. Throws DimensionMismatch.
Label predict(const SvmModel& model, const Eigen::VectorXd& x);
Label predict(const SigmoidModel& model, const Eigen::VectorXd& x);

// -- Cross-validation ----------------------------------------------------------------

struct FoldSplit {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

/// Stratified k-fold: per-class counts in each test fold differ from exact
/// proportionality by at most 1; deterministic given seed. Throws
/// TooFewSamples.
std::vector<FoldSplit> stratified_kfold(const LabeledSet& data, int k, std::uint64_t seed);

/// counts[actual][predicted], class order {non_emotional, emotional}.
struct ConfusionMatrix {
  std::array<std::array<std::size_t, 2>, 2> counts{{{0, 0}, {0, 0}}};

  std::size_t total() const;
  ConfusionMatrix& operator+=(const ConfusionMatrix& other);
};

/// Per-class ratios under the classification table's convention:
/// "precision" divides the diagonal by the actual-class row total and
/// "recall" by the predicted-class column total. Standard-convention
/// metrics (precision = column-based, recall = row-based) are also
/// reported. Division by zero yields an unset optional (the table's "-"
/// marker). Throws EmptyMatrix.
struct ClassMetrics {
  std::optional<double> precision_table;  // diag / row total
  std::optional<double> recall_table;     // diag / column total
  std::optional<double> precision_standard;
  std::optional<double> recall_standard;
};

struct MetricsReport {
  std::array<ClassMetrics, 2> per_class;
  double accuracy = 0.0;
};

MetricsReport confusion_metrics(const ConfusionMatrix& cm);

enum class ModelKind { svm, sigmoid };

struct CvConfig {
  ModelKind model = ModelKind::svm;
  SvmConfig svm;
  SigmoidConfig sigmoid;
  int folds = 10;
  std::uint64_t seed = 42;
  bool standardize = true;
};

struct EvalReport {
  std::vector<ConfusionMatrix> fold_matrices;
  ConfusionMatrix pooled;
  MetricsReport metrics;          // of the pooled matrix
  double pooled_accuracy = 0.0;
  double mean_fold_accuracy = 0.0;
  std::uint64_t seed = 0;
  std::string model_description;
};

/// Stratified k-fold evaluation: per fold, standardization is fitted on the
/// training split only, the model is trained with a fold-derived seed and
/// scored on the held-out split. Pooled counts are the sum of fold counts.
EvalReport evaluate_cv(const LabeledSet& data, const CvConfig& cfg);

/// Text table in the classification-results layout plus standard-convention
/// metrics and the mean-of-folds accuracy.
std::string format_eval_report(const EvalReport& report);

/// CSV rows `class,tp_row,fp_row,precision,recall` plus a final
/// `accuracy,<value>` line; undefined ratios print as "-".
void write_eval_csv(const EvalReport& report, const std::string& path);

}  // namespace ispear::ml
