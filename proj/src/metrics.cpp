#include <cstdio>
#include <fstream>

#include "ispear/ml.hpp"

namespace ispear::ml {

MetricsReport confusion_metrics(const ConfusionMatrix& cm) {
  const auto total = cm.total();
  if (total == 0) throw Error(ErrorCode::EmptyMatrix, "confusion matrix has no counts");

  MetricsReport report;
  report.accuracy =
      static_cast<double>(cm.counts[0][0] + cm.counts[1][1]) / static_cast<double>(total);

  for (int c = 0; c < 2; ++c) {
    const double diag = static_cast<double>(cm.counts[c][c]);
    const double row_total = static_cast<double>(cm.counts[c][0] + cm.counts[c][1]);
    const double col_total = static_cast<double>(cm.counts[0][c] + cm.counts[1][c]);
    auto& m = report.per_class[c];
    if (row_total > 0.0) {
      m.precision_table = diag / row_total;
      m.recall_standard = diag / row_total;
    }
    if (col_total > 0.0) {
      m.recall_table = diag / col_total;
      m.precision_standard = diag / col_total;
    }
  }
  return report;
}

namespace {

std::string pct(const std::optional<double>& v) {
  if (!v) return "-";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f%%", *v * 100.0);
  return buf;
}

std::string frac(const std::optional<double>& v) { return v ? fmt_g9(*v) : "-"; }

}  // namespace

std::string format_eval_report(const EvalReport& report) {
  const auto& cm = report.pooled;
  const auto& m = report.metrics;
  std::string out;
  char line[160];

  out += "model: " + report.model_description + "\n";
  std::snprintf(line, sizeof(line), "%-22s %15s %15s\n", "", "non-emotional", "emotional");
  out += line;
  std::snprintf(line, sizeof(line), "%-22s %15zu %15zu\n", "non-emotional (actual)",
                cm.counts[0][0], cm.counts[0][1]);
  out += line;
  std::snprintf(line, sizeof(line), "%-22s %15zu %15zu\n", "emotional (actual)",
                cm.counts[1][0], cm.counts[1][1]);
  out += line;
  std::snprintf(line, sizeof(line), "%-22s %15s %15s\n", "precision",
                pct(m.per_class[0].precision_table).c_str(),
                pct(m.per_class[1].precision_table).c_str());
  out += line;
  std::snprintf(line, sizeof(line), "%-22s %15s %15s\n", "recall",
                pct(m.per_class[0].recall_table).c_str(),
                pct(m.per_class[1].recall_table).c_str());
  out += line;
  std::snprintf(line, sizeof(line), "%-22s %15s\n", "accuracy",
                pct(report.pooled_accuracy).c_str());
  out += line;
  std::snprintf(line, sizeof(line), "%-22s %15s %15s\n", "precision (standard)",
                pct(m.per_class[0].precision_standard).c_str(),
                pct(m.per_class[1].precision_standard).c_str());
  out += line;
  std::snprintf(line, sizeof(line), "%-22s %15s %15s\n", "recall (standard)",
                pct(m.per_class[0].recall_standard).c_str(),
                pct(m.per_class[1].recall_standard).c_str());
  out += line;
  std::snprintf(line, sizeof(line), "%-22s %15s\n", "mean-of-folds acc.",
                pct(report.mean_fold_accuracy).c_str());
  out += line;
  return out;
}

void write_eval_csv(const EvalReport& report, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot create " + path);
  const auto& cm = report.pooled;
  const auto& m = report.metrics;
  out << "class,tp_row,fp_row,precision,recall\n";
  const char* names[2] = {"non_emotional", "emotional"};
  for (int c = 0; c < 2; ++c) {
    out << names[c] << ',' << cm.counts[c][c] << ',' << cm.counts[c][1 - c] << ','
        << frac(m.per_class[c].precision_table) << ',' << frac(m.per_class[c].recall_table)
        << "\n";
  }
  out << "accuracy," << fmt_g9(report.pooled_accuracy) << "\n";
  if (!out) throw Error(ErrorCode::IoError, "write failure on " + path);
}

}  // namespace ispear::ml
