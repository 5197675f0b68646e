#include <cmath>
#include <limits>

#include "ispear/stats.hpp"

namespace ispear::stats {

TestResult anova_oneway(const std::vector<std::vector<double>>& groups) {
  const std::size_t k = groups.size();
  if (k < 2) throw Error(ErrorCode::DegenerateGroups, "ANOVA needs at least 2 groups");

  std::size_t n = 0;
  double grand_sum = 0.0;
  for (const auto& g : groups) {
    if (g.empty()) throw Error(ErrorCode::DegenerateGroups, "ANOVA group is empty");
    n += g.size();
    for (double v : g) grand_sum += v;
  }
  if (n <= k)
    throw Error(ErrorCode::DegenerateGroups,
                "ANOVA needs more observations than groups");

  const double grand_mean = grand_sum / static_cast<double>(n);
  double ssb = 0.0, ssw = 0.0, scale = 0.0;
  for (const auto& g : groups) {
    double mean = 0.0;
    for (double v : g) mean += v;
    mean /= static_cast<double>(g.size());
    ssb += static_cast<double>(g.size()) * (mean - grand_mean) * (mean - grand_mean);
    for (double v : g) {
      ssw += (v - mean) * (v - mean);
      scale += (v - grand_mean) * (v - grand_mean);
    }
  }

  TestResult r;
  r.df1 = static_cast<double>(k - 1);
  r.df2 = static_cast<double>(n - k);

  // Degenerate conventions, with an epsilon relative to the total spread.
  const double eps = 1e-12 * (scale + 1.0);
  if (ssw <= eps) {
    if (ssb <= eps) {
      r.statistic = 0.0;
      r.p_value = 1.0;
    } else {
      r.statistic = std::numeric_limits<double>::infinity();
      r.p_value = 0.0;
    }
    return r;
  }

  r.statistic = (ssb / r.df1) / (ssw / r.df2);
  r.p_value = f_sf(r.statistic, static_cast<int>(r.df1), static_cast<int>(r.df2));
  return r;
}

}  // namespace ispear::stats
