#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ispear {

enum class ErrorCode {
  NotFound,
  BadFormat,
  Empty,
  IoError,
  ParseError,
  DuplicateRecord,
  ShapeMismatch,
  SubjectMismatch,
  DegenerateGroups,
  BadConfig,
  NoSpeech,
  TooShort,
  UnsupportedOrder,
  EmptySignal,
  DomainError,
  RankDeficient,
  SingularGroup,
  NotNested,
  DataMismatch,
  BothClassesRequired,
  DivergedLoss,
  DimensionMismatch,
  TooFewSamples,
  UnknownColumn,
  EmptyMatrix,
};

/// Library-wide exception carrying a machine-checkable error code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

const char* error_code_name(ErrorCode code);

/// Deterministic random generator. All draws go through explicit integer
/// transforms so that streams are identical across platforms and standard
/// library versions (std::uniform_real_distribution and friends are
/// implementation-defined and must not be used for outputs under test).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

  std::uint64_t next_u64();

  /// Uniform in [0, 1).
  double uniform();
  /// Uniform in [lo, hi).
  double uniform(double lo, double hi);
  /// Uniform integer in [0, n), n > 0.
  std::uint64_t uniform_int(std::uint64_t n);
  /// Standard normal via Box-Muller (both values consumed from the stream).
  double normal();
  double normal(double mean, double sd) { return mean + sd * normal(); }

  /// In-place Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(uniform_int(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// Mixes a root seed with a stream index into an independent child seed.
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index);

// -- CSV helpers ------------------------------------------------------------

/// Splits one CSV line on commas. No quoting support: the file formats this
/// project defines never contain embedded commas.
std::vector<std::string> split_csv_line(const std::string& line);

/// Reads all non-empty lines of a text file. Throws NotFound / IoError.
std::vector<std::string> read_lines(const std::string& path);

/// Formats a double with 9 significant digits ("%.9g"), the fixed width used
/// by every CSV this project writes.
std::string fmt_g9(double v);

std::string to_lower(const std::string& s);
std::string trim(const std::string& s);

}  // namespace ispear
