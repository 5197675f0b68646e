#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>

#include "ispear/stats.hpp"

namespace ispear::stats {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSigma2Floor = 1e-290;  // keeps log() finite on exact fits

std::uint64_t fnv1a(const void* data, std::size_t len, std::uint64_t h = 1469598103934665603ULL) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

LmmProfile::LmmProfile(const ModelSpec& spec, const DataTable& table) {
  const auto& y = table.numeric(spec.response);
  const auto n = static_cast<Eigen::Index>(y.size());
  if (n == 0) throw Error(ErrorCode::Empty, "empty response column");
  y_ = Eigen::Map<const Eigen::VectorXd>(y.data(), n);
  data_hash_ = fnv1a(y.data(), y.size() * sizeof(double), fnv1a(&n, sizeof(n)));

  // Treatment contrasts: intercept plus one dummy per sorted non-reference
  // level of every fixed factor.
  beta_names_.push_back("(intercept)");
  std::vector<std::pair<const std::vector<std::string>*, std::map<std::string, int>>> factors;
  int p = 1;
  for (const auto& factor : spec.fixed) {
    const auto& values = table.categorical(factor.name);
    auto levels = table.levels(factor.name);
    if (levels.size() < 2)
      throw Error(ErrorCode::BadConfig, "factor '" + factor.name + "' has fewer than 2 levels");
    if (std::find(levels.begin(), levels.end(), factor.reference) == levels.end())
      throw Error(ErrorCode::BadConfig, "reference level '" + factor.reference +
                                            "' not found in factor '" + factor.name + "'");
    std::sort(levels.begin(), levels.end());
    std::map<std::string, int> col_of_level;
    for (const auto& level : levels) {
      if (level == factor.reference) continue;
      col_of_level[level] = p++;
      beta_names_.push_back(factor.name + "[" + level + "]");
    }
    factors.emplace_back(&values, std::move(col_of_level));
  }

  x_ = Eigen::MatrixXd::Zero(n, p);
  x_.col(0).setOnes();
  for (auto& [values, col_of_level] : factors) {
    for (Eigen::Index i = 0; i < n; ++i) {
      auto it = col_of_level.find((*values)[static_cast<std::size_t>(i)]);
      if (it != col_of_level.end()) x_(i, it->second) = 1.0;
    }
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x_);
  if (qr.rank() < p)
    throw Error(ErrorCode::RankDeficient, "design matrix is rank deficient");

  if (spec.random_group) {
    const auto& values = table.categorical(*spec.random_group);
    group_labels_ = table.levels(*spec.random_group);
    std::sort(group_labels_.begin(), group_labels_.end());
    if (group_labels_.size() < 2)
      throw Error(ErrorCode::SingularGroup,
                  "grouping factor '" + *spec.random_group + "' has fewer than 2 levels");
    std::map<std::string, int> index_of;
    for (std::size_t g = 0; g < group_labels_.size(); ++g)
      index_of[group_labels_[g]] = static_cast<int>(g);
    group_of_row_.resize(static_cast<std::size_t>(n));
    group_sizes_.assign(group_labels_.size(), 0);
    for (Eigen::Index i = 0; i < n; ++i) {
      int g = index_of.at(values[static_cast<std::size_t>(i)]);
      group_of_row_[static_cast<std::size_t>(i)] = g;
      group_sizes_[static_cast<std::size_t>(g)]++;
    }
    has_random_ = true;
  }

  // Sufficient statistics; every profiled evaluation is O(groups * p^2)
  // after this.
  xtx_ = x_.transpose() * x_;
  xty_ = x_.transpose() * y_;
  yty_ = y_.squaredNorm();
  if (has_random_) {
    group_x_sums_.assign(group_labels_.size(), Eigen::VectorXd::Zero(p));
    group_y_sums_.assign(group_labels_.size(), 0.0);
    for (Eigen::Index i = 0; i < n; ++i) {
      auto g = static_cast<std::size_t>(group_of_row_[static_cast<std::size_t>(i)]);
      group_x_sums_[g] += x_.row(i).transpose();
      group_y_sums_[g] += y_(i);
    }
  }
}

LmmProfile::Profiled LmmProfile::profile(double theta) const {
  const auto n = static_cast<double>(y_.size());
  const double w = theta * theta;

  Eigen::MatrixXd a = xtx_;
  Eigen::VectorXd u = xty_;
  double q = yty_;
  double log_det = 0.0;
  if (has_random_ && w > 0.0) {
    for (std::size_t g = 0; g < group_x_sums_.size(); ++g) {
      const double ng = group_sizes_[g];
      const double c = w / (1.0 + w * ng);
      a.noalias() -= c * group_x_sums_[g] * group_x_sums_[g].transpose();
      u.noalias() -= c * group_y_sums_[g] * group_x_sums_[g];
      q -= c * group_y_sums_[g] * group_y_sums_[g];
      log_det += std::log1p(w * ng);
    }
  }

  Profiled out;
  Eigen::LDLT<Eigen::MatrixXd> ldlt(a);
  out.beta = ldlt.solve(u);
  out.xvx_inv = ldlt.solve(Eigen::MatrixXd::Identity(a.rows(), a.cols()));
  const double rss = std::max(q - out.beta.dot(u), 0.0);
  out.sigma2_e = std::max(rss / n, kSigma2Floor);
  out.deviance = n * std::log(2.0 * kPi * out.sigma2_e) + n + log_det;
  return out;
}

double LmmProfile::deviance_at(double theta) const { return profile(theta).deviance; }

LmmFit LmmProfile::fit(std::optional<double> pinned_theta) const {
  double theta = 0.0;
  if (pinned_theta) {
    theta = *pinned_theta;
  } else if (has_random_) {
    // Dense scan, then golden-section refinement around the best bracket.
    constexpr int kGridPoints = 1024;
    double best_theta = 0.0;
    double best_dev = deviance_at(0.0);
    const double step = kThetaMax / (kGridPoints - 1);
    for (int i = 1; i < kGridPoints; ++i) {
      const double t = i * step;
      const double d = deviance_at(t);
      if (d < best_dev) {
        best_dev = d;
        best_theta = t;
      }
    }
    double lo = std::max(0.0, best_theta - step);
    double hi = std::min(kThetaMax, best_theta + step);
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = deviance_at(x1);
    double f2 = deviance_at(x2);
    while (hi - lo > 1e-8) {
      if (f1 < f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - inv_phi * (hi - lo);
        f1 = deviance_at(x1);
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + inv_phi * (hi - lo);
        f2 = deviance_at(x2);
      }
    }
    const double mid = 0.5 * (lo + hi);
    theta = (deviance_at(mid) <= best_dev) ? mid : best_theta;
  }

  Profiled prof = profile(theta);
  const auto n = static_cast<double>(y_.size());
  const auto p = static_cast<int>(x_.cols());

  LmmFit fit;
  fit.beta = prof.beta;
  fit.beta_names = beta_names_;
  fit.beta_se.resize(p);
  for (int j = 0; j < p; ++j)
    fit.beta_se(j) = std::sqrt(std::max(prof.sigma2_e * prof.xvx_inv(j, j), 0.0));
  fit.theta = theta;
  fit.sigma_e = std::sqrt(prof.sigma2_e);
  fit.sigma_b = theta * fit.sigma_e;
  fit.deviance = prof.deviance;
  fit.log_lik = -0.5 * prof.deviance;
  fit.n_obs = static_cast<int>(n);
  fit.data_hash = data_hash_;
  // Free parameters: beta, sigma_e, plus the variance ratio when it was
  // actually optimized.
  fit.n_params = p + 1 + ((has_random_ && !pinned_theta) ? 1 : 0);

  if (has_random_) {
    const double w = theta * theta;
    for (std::size_t g = 0; g < group_labels_.size(); ++g) {
      const double resid_sum = group_y_sums_[g] - group_x_sums_[g].dot(prof.beta);
      fit.blups[group_labels_[g]] = w * resid_sum / (1.0 + w * group_sizes_[g]);
    }
  }
  return fit;
}

LmmFit fit_ols(const ModelSpec& spec, const DataTable& table) {
  ModelSpec no_random = spec;
  no_random.random_group.reset();
  return LmmProfile(no_random, table).fit();
}

LmmFit fit_lmm(const ModelSpec& spec, const DataTable& table) {
  if (!spec.random_group)
    throw Error(ErrorCode::BadConfig, "fit_lmm requires a random grouping factor");
  return LmmProfile(spec, table).fit();
}

LmmFit fit_lmm_at_theta(const ModelSpec& spec, const DataTable& table, double theta) {
  if (!spec.random_group)
    throw Error(ErrorCode::BadConfig, "fit_lmm_at_theta requires a random grouping factor");
  if (theta < 0.0) throw Error(ErrorCode::DomainError, "theta must be >= 0");
  return LmmProfile(spec, table).fit(theta);
}

TestResult lrt(const LmmFit& full, const LmmFit& null_model, bool boundary_mixture) {
  if (full.n_obs != null_model.n_obs || full.data_hash != null_model.data_hash)
    throw Error(ErrorCode::DataMismatch, "models were fitted on different data");
  const int df = full.n_params - null_model.n_params;
  if (df <= 0)
    throw Error(ErrorCode::NotNested,
                "null model must have strictly fewer parameters than the full model");

  TestResult r;
  r.statistic = std::max(0.0, null_model.deviance - full.deviance);
  r.df1 = df;
  r.df2 = 0.0;
  if (boundary_mixture && df == 1) {
    // Variance components sit on the boundary of the parameter space; the
    // reference distribution is an equal mixture of chi2_0 and chi2_1.
    r.p_value = r.statistic == 0.0 ? 1.0 : 0.5 * chi_square_sf(r.statistic, 1);
  } else {
    r.p_value = chi_square_sf(r.statistic, df);
  }
  return r;
}

std::vector<GroupSummary> group_summary(const DataTable& table, const std::string& group_by,
                                        const std::string& response) {
  const auto& groups = table.categorical(group_by);
  const auto& values = table.numeric(response);

  std::vector<std::string> order = table.levels(group_by);
  std::map<std::string, std::vector<double>> buckets;
  for (std::size_t i = 0; i < groups.size(); ++i) buckets[groups[i]].push_back(values[i]);

  std::vector<GroupSummary> out;
  for (const auto& label : order) {
    const auto& xs = buckets[label];
    GroupSummary s;
    s.group = label;
    s.n = xs.size();
    for (double v : xs) s.mean += v;
    s.mean /= static_cast<double>(s.n);
    if (s.n > 1) {
      double ss = 0.0;
      for (double v : xs) ss += (v - s.mean) * (v - s.mean);
      s.sd = std::sqrt(ss / static_cast<double>(s.n - 1));
    }
    s.se = s.sd / std::sqrt(static_cast<double>(s.n));
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace ispear::stats
