#include <cstdio>
#include <fstream>

#include "ispear/stats.hpp"

namespace ispear::stats {

std::string format_analysis_table(const std::vector<ComparisonRow>& rows) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof(line), "%-16s %-14s %12s %5s %12s\n", "response",
                "comparison", "statistic", "df", "p-value");
  out += line;
  out += std::string(62, '-') + "\n";
  for (const auto& row : rows) {
    std::snprintf(line, sizeof(line), "%-16s %-14s %12.4f %5d %12.4g\n",
                  row.response.c_str(), row.comparison.c_str(), row.test.statistic,
                  static_cast<int>(row.test.df1), row.test.p_value);
    out += line;
  }
  return out;
}

void write_analysis_csv(const std::vector<ComparisonRow>& rows, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot create " + path);
  out << "response,comparison,statistic,df,p_value\n";
  for (const auto& row : rows) {
    out << row.response << ',' << row.comparison << ',' << fmt_g9(row.test.statistic) << ','
        << static_cast<int>(row.test.df1) << ',' << fmt_g9(row.test.p_value) << "\n";
  }
  if (!out) throw Error(ErrorCode::IoError, "write failure on " + path);
}

void write_group_summary_csv(const std::vector<GroupSummary>& rows, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot create " + path);
  out << "group,n,mean,sd,se\n";
  for (const auto& row : rows) {
    out << row.group << ',' << row.n << ',' << fmt_g9(row.mean) << ',' << fmt_g9(row.sd)
        << ',' << fmt_g9(row.se) << "\n";
  }
  if (!out) throw Error(ErrorCode::IoError, "write failure on " + path);
}

}  // namespace ispear::stats
