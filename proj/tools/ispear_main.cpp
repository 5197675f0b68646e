#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ispear/corpus.hpp"
#include "ispear/dsp.hpp"
#include "ispear/ml.hpp"
#include "ispear/stats.hpp"

namespace fs = std::filesystem;
using namespace ispear;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot create " + path);
  out << content;
  if (!out) throw Error(ErrorCode::IoError, "write failure on " + path);
}

struct SynthArgs {
  corpus::SynthConfig cfg;
  std::uint64_t seed = 42;
  std::string out_dir;
};

int run_synth(const SynthArgs& args) {
  corpus::CorpusManifest manifest = corpus::synth_corpus(args.cfg, args.seed, args.out_dir);
  write_text_file((fs::path(args.out_dir) / "synth_config.json").string(),
                  corpus::synth_config_json(args.cfg, args.seed));
  std::cerr << "synth: wrote " << manifest.records.size() << " clips under " << args.out_dir
            << "\n";
  return kExitOk;
}

struct ExtractArgs {
  std::string manifest_path;
  std::string out_path;
  bool strict_shape = false;
  dsp::EndpointConfig endpoint;
};

int run_extract(const ExtractArgs& args) {
  corpus::CorpusManifest manifest = corpus::load_manifest(args.manifest_path, args.strict_shape);
  dsp::ExtractResult result = dsp::extract_features(manifest, args.endpoint);
  for (const auto& failure : result.failures)
    std::cerr << "extract: skipped " << failure.record.path << ": " << failure.reason << "\n";
  dsp::write_features_csv(result.rows, args.out_path);
  std::cerr << "extract: wrote " << result.rows.size() << " rows to " << args.out_path << "\n";
  return kExitOk;
}

struct AnalyzeArgs {
  std::string features_path;
  std::string out_dir;
  std::string random_group = "gender";
  std::string reference = "happy";
  bool boundary_correction = false;
};

int run_analyze(const AnalyzeArgs& args) {
  stats::DataTable table = stats::DataTable::read_csv(args.features_path);

  std::map<std::string, std::string> group_column = {
      {"gender", "gender"}, {"subject", "subject_id"}, {"word", "word"}};
  auto it = group_column.find(args.random_group);
  if (it == group_column.end())
    throw Error(ErrorCode::BadConfig,
                "--random-group must be one of gender, subject, word");

  const std::pair<std::string, std::string> responses[6] = {
      {"amplitude", "amplitude_mean"}, {"duration", "duration_samples"}, {"db1", "db1"},
      {"db2", "db2"},                  {"db3", "db3"},                   {"db4", "db4"}};

  std::vector<stats::ComparisonRow> rows;
  for (const auto& [label, column] : responses) {
    stats::ModelSpec full_spec;
    full_spec.response = column;
    full_spec.fixed = {{"emotion", args.reference}};
    full_spec.random_group = it->second;

    stats::ModelSpec null_fixed = full_spec;
    null_fixed.fixed.clear();

    stats::LmmFit full = stats::fit_lmm(full_spec, table);
    stats::LmmFit no_emotion = stats::fit_lmm(null_fixed, table);
    stats::LmmFit no_random = stats::fit_ols(full_spec, table);

    rows.push_back({label, "emotion_fixed", stats::lrt(full, no_emotion)});
    rows.push_back(
        {label, "random_group", stats::lrt(full, no_random, args.boundary_correction)});
  }

  auto gender_rows = stats::group_summary(table, "gender", "duration_s");

  std::error_code ec;
  fs::create_directories(args.out_dir, ec);
  std::string text = stats::format_analysis_table(rows);
  text += "\nduration_s by gender\n";
  for (const auto& g : gender_rows) {
    text += "  " + g.group + ": n=" + std::to_string(g.n) + " mean=" + fmt_g9(g.mean) +
            " sd=" + fmt_g9(g.sd) + " se=" + fmt_g9(g.se) + "\n";
  }
  write_text_file((fs::path(args.out_dir) / "analysis.txt").string(), text);
  stats::write_analysis_csv(rows, (fs::path(args.out_dir) / "analysis.csv").string());
  stats::write_group_summary_csv(gender_rows,
                                 (fs::path(args.out_dir) / "gender_summary.csv").string());
  std::cerr << "analyze: wrote reports under " << args.out_dir << "\n";
  return kExitOk;
}

struct EvaluateArgs {
  std::string features_path;
  std::string out_dir;
  std::string model = "both";
  std::vector<std::string> inputs = {"duration"};
  ml::CvConfig cv;
};

ml::LabeledSet load_labeled_set(const stats::DataTable& table,
                                const std::vector<std::string>& inputs) {
  std::map<std::string, std::string> column_of = {
      {"amplitude", "amplitude_mean"}, {"duration", "duration_samples"}, {"db1", "db1"},
      {"db2", "db2"},                  {"db3", "db3"},                   {"db4", "db4"}};

  ml::LabeledSet set;
  set.features.resize(static_cast<Eigen::Index>(table.rows()),
                      static_cast<Eigen::Index>(inputs.size()));
  for (std::size_t j = 0; j < inputs.size(); ++j) {
    auto it = column_of.find(inputs[j]);
    if (it == column_of.end())
      throw Error(ErrorCode::BadConfig, "--inputs: unknown feature '" + inputs[j] + "'");
    const auto& col = table.numeric(it->second);
    for (std::size_t i = 0; i < col.size(); ++i)
      set.features(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = col[i];
  }

  // happy and sad are the emotional class, neutral the non-emotional one.
  const auto& emotions = table.categorical("emotion");
  for (const auto& e : emotions)
    set.labels.push_back(e == "neutral" ? ml::Label::non_emotional : ml::Label::emotional);
  return set;
}

int run_evaluate(const EvaluateArgs& args) {
  stats::DataTable table = stats::DataTable::read_csv(args.features_path);
  ml::LabeledSet data = load_labeled_set(table, args.inputs);

  std::error_code ec;
  fs::create_directories(args.out_dir, ec);

  std::string text;
  if (args.model == "both" || args.model == "svm") {
    ml::CvConfig cfg = args.cv;
    cfg.model = ml::ModelKind::svm;
    ml::EvalReport report = ml::evaluate_cv(data, cfg);
    text += ml::format_eval_report(report) + "\n";
    ml::write_eval_csv(report, (fs::path(args.out_dir) / "eval_svm.csv").string());
  }
  if (args.model == "both" || args.model == "sigmoid") {
    ml::CvConfig cfg = args.cv;
    cfg.model = ml::ModelKind::sigmoid;
    ml::EvalReport report = ml::evaluate_cv(data, cfg);
    text += ml::format_eval_report(report) + "\n";
    ml::write_eval_csv(report, (fs::path(args.out_dir) / "eval_sigmoid.csv").string());
  }
  write_text_file((fs::path(args.out_dir) / "evaluation.txt").string(), text);
  std::cerr << "evaluate: wrote reports under " << args.out_dir << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"speech-emotion feature pipeline: synthesize, extract, analyze, evaluate"};
  app.require_subcommand(1);

  SynthArgs synth;
  auto* synth_cmd = app.add_subcommand("synth", "generate a deterministic synthetic corpus");
  synth_cmd->add_option("--subjects", synth.cfg.subjects, "number of subjects")
      ->capture_default_str();
  synth_cmd->add_option("--words", synth.cfg.words, "number of words per subject")
      ->capture_default_str();
  synth_cmd->add_option("--sample-rate", synth.cfg.sample_rate, "sample rate in Hz")
      ->capture_default_str();
  synth_cmd->add_option("--seed", synth.seed, "root RNG seed")->capture_default_str();
  synth_cmd->add_option("--out", synth.out_dir, "output directory")->required();
  synth_cmd->add_option("--duration-intercept", synth.cfg.duration.intercept,
                        "mean happy burst length, samples")->capture_default_str();
  synth_cmd->add_option("--duration-neutral-offset", synth.cfg.duration.neutral_offset,
                        "neutral offset, samples")->capture_default_str();
  synth_cmd->add_option("--duration-sad-offset", synth.cfg.duration.sad_offset,
                        "sad offset, samples")->capture_default_str();
  synth_cmd->add_option("--duration-male-offset", synth.cfg.duration.male_offset,
                        "male offset, samples")->capture_default_str();
  synth_cmd->add_option("--duration-female-offset", synth.cfg.duration.female_offset,
                        "female offset, samples")->capture_default_str();
  synth_cmd->add_option("--duration-subject-sd", synth.cfg.duration.subject_sd,
                        "per-subject SD, samples")->capture_default_str();
  synth_cmd->add_option("--duration-residual-sd", synth.cfg.duration.residual_sd,
                        "per-utterance SD, samples")->capture_default_str();
  synth_cmd->add_option("--amplitude-mean", synth.cfg.amplitude.mean_level,
                        "mean burst level")->capture_default_str();
  synth_cmd->add_option("--amplitude-sd", synth.cfg.amplitude.level_sd,
                        "burst level SD")->capture_default_str();

  ExtractArgs extract;
  auto* extract_cmd = app.add_subcommand("extract", "extract features from a corpus");
  extract_cmd->add_option("--manifest", extract.manifest_path, "manifest CSV")->required();
  extract_cmd->add_option("--out", extract.out_path, "output features CSV")->required();
  extract_cmd->add_flag("--strict-shape", extract.strict_shape,
                        "require |subjects| x |words| x |emotions| == |records|");
  extract_cmd->add_option("--frame-len", extract.endpoint.frame_len_s,
                          "frame length, seconds")->capture_default_str();
  extract_cmd->add_option("--hop", extract.endpoint.hop_s, "hop, seconds")
      ->capture_default_str();
  extract_cmd->add_option("--rel-threshold", extract.endpoint.rel_threshold,
                          "energy threshold relative to peak frame")->capture_default_str();
  extract_cmd->add_option("--min-onset-frames", extract.endpoint.min_onset_frames,
                          "frames required to start speech")->capture_default_str();
  extract_cmd->add_option("--hangover-frames", extract.endpoint.hangover_frames,
                          "frames kept after the last speech frame")->capture_default_str();

  AnalyzeArgs analyze;
  auto* analyze_cmd =
      app.add_subcommand("analyze", "mixed-model comparisons for all six features");
  analyze_cmd->add_option("--features", analyze.features_path, "features CSV")->required();
  analyze_cmd->add_option("--out", analyze.out_dir, "output directory")->required();
  analyze_cmd->add_option("--random-group", analyze.random_group,
                          "random intercept grouping: gender, subject or word")
      ->capture_default_str();
  analyze_cmd->add_option("--reference", analyze.reference,
                          "emotion reference level")->capture_default_str();
  analyze_cmd->add_flag("--boundary-correction", analyze.boundary_correction,
                        "use the 0.5*chi2_0 + 0.5*chi2_1 mixture for the "
                        "random-effect comparison");

  EvaluateArgs evaluate;
  auto* evaluate_cmd =
      app.add_subcommand("evaluate", "cross-validated emotional vs non-emotional classification");
  evaluate_cmd->add_option("--features", evaluate.features_path, "features CSV")->required();
  evaluate_cmd->add_option("--out", evaluate.out_dir, "output directory")->required();
  evaluate_cmd->add_option("--model", evaluate.model, "both, svm or sigmoid")
      ->capture_default_str();
  evaluate_cmd->add_option("--inputs", evaluate.inputs,
                           "input features: amplitude, duration, db1..db4")
      ->capture_default_str();
  evaluate_cmd->add_option("--folds", evaluate.cv.folds, "cross-validation folds")
      ->capture_default_str();
  evaluate_cmd->add_option("--seed", evaluate.cv.seed, "root RNG seed")->capture_default_str();
  evaluate_cmd->add_option("--svm-degree", evaluate.cv.svm.kernel.degree,
                           "polynomial kernel degree")->capture_default_str();
  evaluate_cmd->add_option("--svm-coef0", evaluate.cv.svm.kernel.coef0,
                           "polynomial kernel constant")->capture_default_str();
  evaluate_cmd->add_option("--svm-gamma", evaluate.cv.svm.kernel.gamma,
                           "kernel scale (0 means 1/d)")->capture_default_str();
  evaluate_cmd->add_option("--svm-c", evaluate.cv.svm.C, "box constraint")
      ->capture_default_str();
  evaluate_cmd->add_option("--svm-tol", evaluate.cv.svm.tol, "KKT tolerance")
      ->capture_default_str();
  evaluate_cmd->add_option("--svm-max-passes", evaluate.cv.svm.max_passes,
                           "SMO sweep budget")->capture_default_str();
  evaluate_cmd->add_option("--class-weight", evaluate.cv.svm.class_weight_non_emotional,
                           "extra weight on the non-emotional class (also applied "
                           "to the sigmoid loss)")->capture_default_str();
  evaluate_cmd->add_option("--sigmoid-lr", evaluate.cv.sigmoid.learning_rate,
                           "gradient-descent learning rate")->capture_default_str();
  evaluate_cmd->add_option("--sigmoid-epochs", evaluate.cv.sigmoid.epochs,
                           "gradient-descent epochs")->capture_default_str();
  bool no_standardize = false;
  evaluate_cmd->add_flag("--no-standardize", no_standardize,
                         "skip per-fold z-standardization");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (synth_cmd->parsed()) return run_synth(synth);
    if (extract_cmd->parsed()) return run_extract(extract);
    if (analyze_cmd->parsed()) return run_analyze(analyze);
    if (evaluate_cmd->parsed()) {
      if (evaluate.cv.folds < 2) {
        std::cerr << "error: --folds must be at least 2\n";
        return kExitUsage;
      }
      if (evaluate.model != "both" && evaluate.model != "svm" &&
          evaluate.model != "sigmoid") {
        std::cerr << "error: --model must be both, svm or sigmoid\n";
        return kExitUsage;
      }
      evaluate.cv.sigmoid.class_weight_non_emotional =
          evaluate.cv.svm.class_weight_non_emotional;
      evaluate.cv.standardize = !no_standardize;
      return run_evaluate(evaluate);
    }
  } catch (const Error& e) {
    std::cerr << "error [" << error_code_name(e.code()) << "]: " << e.what() << "\n";
    return e.code() == ErrorCode::BadConfig ? kExitUsage : kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}
