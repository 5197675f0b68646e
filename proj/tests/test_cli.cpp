#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "ispear/core.hpp"
#include "ispear/corpus.hpp"

using namespace ispear;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("ispear_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  static int& counter() {
    static int c = 0;
    return c;
  }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

int run(const std::string& args, const std::string& stderr_file = "/dev/null") {
  std::string cmd = std::string(ISPEAR_BIN) + " " + args + " 2>" + stderr_file;
  int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WEXITSTATUS(status);
}

std::string read_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

std::size_t line_count(const std::string& path) { return read_lines(path).size(); }

}  // namespace

TEST_CASE("synth is deterministic and validates flags") {
  TempDir dir;
  CHECK(run("synth --subjects 4 --words 3 --seed 9 --out " + dir.file("c1")) == 0);
  CHECK(run("synth --subjects 4 --words 3 --seed 9 --out " + dir.file("c2")) == 0);

  CHECK(read_bytes(dir.file("c1/manifest.csv")) == read_bytes(dir.file("c2/manifest.csv")));
  CHECK(read_bytes(dir.file("c1/synth_config.json")) ==
        read_bytes(dir.file("c2/synth_config.json")));
  auto manifest = corpus::load_manifest(dir.file("c1/manifest.csv"), true);
  CHECK(manifest.records.size() == 36);
  for (const auto& rec : manifest.records)
    CHECK(read_bytes(manifest.resolve(rec)) == read_bytes(dir.file("c2/" + rec.path)));

  CHECK(run("synth --subjects 0 --out " + dir.file("bad"), dir.file("err.txt")) == 2);
  auto err = read_bytes(dir.file("err.txt"));
  CHECK(err.find("subjects") != std::string::npos);
}

TEST_CASE("extract pipeline and diagnostics") {
  TempDir dir;
  REQUIRE(run("synth --subjects 4 --words 3 --seed 9 --out " + dir.file("c")) == 0);

  CHECK(run("extract --manifest " + dir.file("c/manifest.csv") + " --strict-shape --out " +
            dir.file("f1.csv")) == 0);
  CHECK(line_count(dir.file("f1.csv")) == 37);  // header + 36 rows
  CHECK(run("extract --manifest " + dir.file("c/manifest.csv") + " --out " +
            dir.file("f2.csv")) == 0);
  CHECK(read_bytes(dir.file("f1.csv")) == read_bytes(dir.file("f2.csv")));

  CHECK(run("extract --manifest " + dir.file("nowhere.csv") + " --out " +
            dir.file("f3.csv")) == 1);

  // Silence one clip: the row disappears, a diagnostic appears, exit stays 0.
  auto manifest = corpus::load_manifest(dir.file("c/manifest.csv"), false);
  corpus::AudioClip silence;
  silence.sample_rate = 16000;
  silence.samples.assign(16000, 0.0);
  corpus::write_wav(silence, manifest.resolve(manifest.records[7]));
  CHECK(run("extract --manifest " + dir.file("c/manifest.csv") + " --out " +
            dir.file("f4.csv"), dir.file("err.txt")) == 0);
  CHECK(line_count(dir.file("f4.csv")) == 36);
  CHECK(read_bytes(dir.file("err.txt")).find("NoSpeech") != std::string::npos);
}

TEST_CASE("analyze emits both comparisons per response") {
  TempDir dir;
  REQUIRE(run("synth --subjects 4 --words 3 --seed 9 --out " + dir.file("c")) == 0);
  REQUIRE(run("extract --manifest " + dir.file("c/manifest.csv") + " --out " +
              dir.file("features.csv")) == 0);
  CHECK(run("analyze --features " + dir.file("features.csv") + " --out " +
            dir.file("analysis")) == 0);

  auto lines = read_lines(dir.file("analysis/analysis.csv"));
  REQUIRE(lines.size() == 13);  // header + 6 responses x 2 comparisons
  CHECK(lines[0] == "response,comparison,statistic,df,p_value");
  int emotion_rows = 0, random_rows = 0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto fields = split_csv_line(lines[i]);
    REQUIRE(fields.size() == 5);
    if (fields[1] == "emotion_fixed") ++emotion_rows;
    if (fields[1] == "random_group") ++random_rows;
    double p = std::stod(fields[4]);
    CHECK(p >= 0.0);
    CHECK(p <= 1.0);
  }
  CHECK(emotion_rows == 6);
  CHECK(random_rows == 6);

  // Gender summary: the synthetic male offset is negative, so male speech
  // is shorter.
  auto summary = read_lines(dir.file("analysis/gender_summary.csv"));
  REQUIRE(summary.size() == 3);
  auto male = split_csv_line(summary[1]);
  auto female = split_csv_line(summary[2]);
  REQUIRE(male[0] == "male");
  REQUIRE(female[0] == "female");
  CHECK(std::stod(male[2]) < std::stod(female[2]));
}

TEST_CASE("analyze handles a constant response") {
  TempDir dir;
  REQUIRE(run("synth --subjects 4 --words 3 --seed 9 --out " + dir.file("c")) == 0);
  REQUIRE(run("extract --manifest " + dir.file("c/manifest.csv") + " --out " +
              dir.file("features.csv")) == 0);

  // Rewrite the amplitude column to a constant.
  auto lines = read_lines(dir.file("features.csv"));
  std::ofstream out(dir.file("const.csv"), std::ios::trunc);
  out << lines[0] << "\n";
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto fields = split_csv_line(lines[i]);
    fields[4] = "0.5";
    for (std::size_t j = 0; j < fields.size(); ++j)
      out << fields[j] << (j + 1 == fields.size() ? "\n" : ",");
  }
  out.close();

  CHECK(run("analyze --features " + dir.file("const.csv") + " --out " +
            dir.file("analysis")) == 0);
  for (const auto& line : read_lines(dir.file("analysis/analysis.csv"))) {
    auto fields = split_csv_line(line);
    if (fields[0] == "amplitude") {
      CHECK(std::stod(fields[2]) == 0.0);
      CHECK(std::stod(fields[4]) == 1.0);
    }
  }
}

TEST_CASE("evaluate reports and usage errors") {
  TempDir dir;
  REQUIRE(run("synth --subjects 4 --words 3 --seed 9 --out " + dir.file("c")) == 0);
  REQUIRE(run("extract --manifest " + dir.file("c/manifest.csv") + " --out " +
              dir.file("features.csv")) == 0);

  CHECK(run("evaluate --features " + dir.file("features.csv") + " --folds 1 --out " +
            dir.file("bad")) == 2);
  CHECK(run("evaluate --features " + dir.file("features.csv") + " --model forest --out " +
            dir.file("bad")) == 2);

  const std::string common = "evaluate --features " + dir.file("features.csv") +
                             " --folds 3 --sigmoid-epochs 300 --out ";
  CHECK(run(common + dir.file("e1")) == 0);
  CHECK(run(common + dir.file("e2")) == 0);
  for (const char* name : {"evaluation.txt", "eval_svm.csv", "eval_sigmoid.csv"})
    CHECK(read_bytes(dir.file("e1/") + name) == read_bytes(dir.file("e2/") + name));

  auto svm_lines = read_lines(dir.file("e1/eval_svm.csv"));
  REQUIRE(svm_lines.size() == 4);
  CHECK(svm_lines[0] == "class,tp_row,fp_row,precision,recall");
  auto accuracy_line = split_csv_line(svm_lines[3]);
  REQUIRE(accuracy_line[0] == "accuracy");
  double accuracy = std::stod(accuracy_line[1]);
  CHECK(accuracy >= 0.0);
  CHECK(accuracy <= 1.0);

  CHECK(run("evaluate --features " + dir.file("missing.csv") + " --out " +
            dir.file("e3")) == 1);
}
