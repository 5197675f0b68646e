#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ispear/core.hpp"

namespace ispear::stats {

// -- Special functions ------------------------------------------------------

/// log Gamma(x) for x > 0 (Lanczos). Throws DomainError.
double ln_gamma(double x);

/// Upper tail P(chi2_df > x) via the regularized incomplete gamma.
double chi_square_sf(double x, int df);

/// Upper tail P(F_{d1,d2} > x) via the regularized incomplete beta.
double f_sf(double x, int d1, int d2);

/// Regularized lower incomplete gamma P(a, x) and incomplete beta I_x(a, b);
/// exposed because several callers and tests want them directly.
double gamma_p(double a, double x);
double beta_inc(double a, double b, double x);

// -- One-way ANOVA ------------------------------------------------------------

struct TestResult {
  double statistic = 0.0;  // F or LRT chi-square
  double df1 = 0.0;        // numerator df (or LRT df)
  double df2 = 0.0;        // denominator df (0 for chi-square tests)
  double p_value = 1.0;
};

/// F test across >= 2 groups. Degenerate conventions: all observations
/// identical -> F=0, p=1; zero within-variance with unequal means -> p=0.
/// Throws DegenerateGroups (fewer than 2 groups, or total n <= groups).
TestResult anova_oneway(const std::vector<std::vector<double>>& groups);

// -- Data table ---------------------------------------------------------------

/// Column-typed table: the in-memory form of a feature CSV. Columns whose
/// values all parse as numbers load as numeric, everything else as
/// categorical.
class DataTable {
 public:
  void add_numeric(const std::string& name, std::vector<double> values);
  void add_categorical(const std::string& name, std::vector<std::string> values);

  static DataTable read_csv(const std::string& path);

  std::size_t rows() const { return rows_; }
  bool has_column(const std::string& name) const;
  const std::vector<double>& numeric(const std::string& name) const;
  const std::vector<std::string>& categorical(const std::string& name) const;
  /// Distinct values in first-appearance order.
  std::vector<std::string> levels(const std::string& name) const;

 private:
  struct Column {
    bool is_numeric = false;
    std::vector<double> nums;
    std::vector<std::string> cats;
  };
  const Column& find(const std::string& name) const;

  std::vector<std::pair<std::string, Column>> columns_;
  std::size_t rows_ = 0;
};

// -- Model specification and fits ----------------------------------------------

struct FixedFactor {
  std::string name;
  std::string reference;  // level absorbed into the intercept
};

struct ModelSpec {
  std::string response;
  std::vector<FixedFactor> fixed;           // treatment contrasts
  std::optional<std::string> random_group;  // random intercept grouping factor
};

struct LmmFit {
  Eigen::VectorXd beta;
  std::vector<std::string> beta_names;
  Eigen::VectorXd beta_se;
  double theta = 0.0;    // sigma_b / sigma_e
  double sigma_e = 0.0;
  double sigma_b = 0.0;
  std::map<std::string, double> blups;  // per-group random intercepts
  double log_lik = 0.0;
  double deviance = 0.0;  // -2 log_lik
  int n_params = 0;       // free parameters including variance components
  int n_obs = 0;
  std::uint64_t data_hash = 0;  // guards lrt() against mismatched data
};

/// Ordinary least squares under the same ML likelihood convention as
/// fit_lmm (sigma^2 = RSS/n), so the two are directly comparable in a
/// likelihood-ratio test. Throws RankDeficient.
LmmFit fit_ols(const ModelSpec& spec, const DataTable& table);

/// ML fit of a linear mixed model with one random-intercept grouping
/// factor. beta and sigma_e are profiled out analytically; the profiled
/// deviance is minimized over theta in [0, 100] by grid scan plus
/// golden-section refinement to |dtheta| < 1e-8. Throws RankDeficient,
/// SingularGroup.
LmmFit fit_lmm(const ModelSpec& spec, const DataTable& table);

/// Same machinery with theta pinned (theta = 0 reproduces fit_ols up to
/// the parameter count, which still counts the pinned component).
LmmFit fit_lmm_at_theta(const ModelSpec& spec, const DataTable& table, double theta);

/// Profiled ML deviance as a scalar function of theta; the grid oracle in
/// the tests drives this directly.
class LmmProfile {
 public:
  LmmProfile(const ModelSpec& spec, const DataTable& table);
  double deviance_at(double theta) const;
  LmmFit fit(std::optional<double> pinned_theta = {}) const;

  static constexpr double kThetaMax = 100.0;

 private:
  Eigen::MatrixXd x_;
  Eigen::VectorXd y_;
  std::vector<int> group_of_row_;
  std::vector<std::string> group_labels_;
  std::vector<int> group_sizes_;
  std::vector<std::string> beta_names_;
  bool has_random_ = false;
  std::uint64_t data_hash_ = 0;

  // Sufficient statistics: X'X, X'y, y'y and per-group sums.
  Eigen::MatrixXd xtx_;
  Eigen::VectorXd xty_;
  double yty_ = 0.0;
  std::vector<Eigen::VectorXd> group_x_sums_;
  std::vector<double> group_y_sums_;

  struct Profiled {
    Eigen::VectorXd beta;
    Eigen::MatrixXd xvx_inv;
    double sigma2_e;
    double deviance;
  };
  Profiled profile(double theta) const;
};

/// Likelihood-ratio test of nested ML fits: statistic =
/// max(0, null.deviance - full.deviance), df = difference in n_params,
/// p from chi-square (optionally the 0.5 chi2_0 + 0.5 chi2_1 boundary
/// mixture when testing a variance component). Throws NotNested,
/// DataMismatch.
TestResult lrt(const LmmFit& full, const LmmFit& null_model, bool boundary_mixture = false);

// -- Group summaries ------------------------------------------------------------

struct GroupSummary {
  std::string group;
  std::size_t n = 0;
  double mean = 0.0;
  double sd = 0.0;  // sample SD (n-1); 0 when n == 1
  double se = 0.0;
};

std::vector<GroupSummary> group_summary(const DataTable& table, const std::string& group_by,
                                        const std::string& response);

// -- Analysis report --------------------------------------------------------------

struct ComparisonRow {
  std::string response;
  std::string comparison;  // "emotion_fixed" or "random_group"
  TestResult test;
};

/// Text table: one row per response with both model comparisons.
std::string format_analysis_table(const std::vector<ComparisonRow>& rows);

/// CSV with header `response,comparison,statistic,df,p_value`.
void write_analysis_csv(const std::vector<ComparisonRow>& rows, const std::string& path);

void write_group_summary_csv(const std::vector<GroupSummary>& rows, const std::string& path);

}  // namespace ispear::stats
