#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ispear/core.hpp"

namespace ispear::corpus {

enum class Gender { male, female };
enum class Emotion { happy, neutral, sad };

const char* to_string(Gender g);
const char* to_string(Emotion e);
Gender gender_from_string(const std::string& s);
Emotion emotion_from_string(const std::string& s);

/// Normalized mono sample buffer; the unit of all downstream DSP.
/// Samples live in [-1, +1], sample_rate is in Hz.
struct AudioClip {
  std::vector<double> samples;
  int sample_rate = 0;
};

struct UtteranceRecord {
  std::string path;  // relative to the manifest root
  std::string subject_id;
  Gender gender = Gender::male;
  std::string word;
  Emotion emotion = Emotion::neutral;
};

struct CorpusManifest {
  std::string root;  // directory containing the manifest file
  std::vector<UtteranceRecord> records;

  /// Absolute (root-joined) path of a record's WAV file.
  std::string resolve(const UtteranceRecord& rec) const;
};

// -- WAV I/O ------------------------------------------------------------

/// Reads a RIFF/WAVE file. Requires PCM, 16-bit, mono; integer samples are
/// divided by 32768. Throws NotFound, BadFormat, Empty.
AudioClip read_wav(const std::string& path);

/// Writes 16-bit PCM mono. Values are clamped to [-1, 1], scaled by 32767
/// and rounded to nearest. Throws IoError.
void write_wav(const AudioClip& clip, const std::string& path);

// -- Manifest -----------------------------------------------------------

/// Parses a manifest CSV (header `path,subject_id,gender,word,emotion`).
/// (subject_id, word, emotion) triples must be unique. With strict_shape,
/// also requires |subjects| x |words| x |emotions| == |records|.
CorpusManifest load_manifest(const std::string& path, bool strict_shape);

void write_manifest(const CorpusManifest& manifest, const std::string& path);

// -- DES questionnaire validation ----------------------------------------

enum class DesPhase { pre, post };

/// The 16 questionnaire emotions, in column order of the DES CSV.
extern const std::array<const char*, 16> kDesEmotionNames;

/// Index into DesRecord::scores holding the questionnaire item that tracks
/// a targeted recording emotion (happy -> happiness, sad -> sadness,
/// neutral -> calm).
int des_score_index(Emotion targeted);

struct DesRecord {
  std::string subject_id;
  DesPhase phase = DesPhase::pre;
  Emotion targeted_emotion = Emotion::neutral;
  std::array<int, 16> scores{};  // each in [1, 5]
};

struct ValidationVerdict {
  double condition1_p = 1.0;  // targeted score, pre vs post
  double condition2_p = 1.0;  // post targeted vs pooled post non-targeted
  bool valid = false;
  double alpha = 0.05;
};

/// Reads a DES CSV (header `subject_id,phase,targeted_emotion,s01..s16`).
std::vector<DesRecord> load_des_csv(const std::string& path);

/// Pooled-across-subjects validation: condition 1 compares the targeted
/// questionnaire score pre vs post stimulation, condition 2 compares post
/// targeted scores against all pooled post non-targeted scores; both by
/// one-way ANOVA. Only records whose targeted_emotion matches are used.
/// Throws SubjectMismatch, DegenerateGroups.
ValidationVerdict des_validate(const std::vector<DesRecord>& pre,
                               const std::vector<DesRecord>& post,
                               Emotion targeted, double alpha = 0.05);

struct SubjectVerdict {
  std::string subject_id;
  ValidationVerdict verdict;
};

/// Per-subject granularity. Condition 1 compares the subject's 16 pre scores
/// against their 16 post scores; condition 2 compares the single post
/// targeted score against the 15 post non-targeted scores (a singleton
/// group, which one-way ANOVA handles with df (1, 14)). The pooled form
/// above is the documented default.
std::vector<SubjectVerdict> des_validate_by_subject(
    const std::vector<DesRecord>& pre, const std::vector<DesRecord>& post,
    Emotion targeted, double alpha = 0.05);

// -- Synthetic corpus -----------------------------------------------------

/// Duration model in samples at the source rate. The defaults place group
/// means so that happy utterances average intercept samples, neutral and sad
/// are offset from happy, and male/female speakers average 0.49 s / 0.67 s.
struct DurationModel {
  double intercept = 9331.8;       // happy reference level
  double neutral_offset = -282.0;
  double sad_offset = 32.5;
  double male_offset = -1408.633333333333;   // puts the male mean at 0.49 s
  double female_offset = 1471.366666666667;  // and the female mean at 0.67 s
  double subject_sd = 100.0;
  double residual_sd = 220.0;
};

struct AmplitudeModel {
  double mean_level = 0.35;
  double level_sd = 0.06;
  double min_level = 0.05;
  double max_level = 0.90;
};

struct SynthConfig {
  int subjects = 38;
  int words = 30;
  int sample_rate = 16000;
  DurationModel duration;
  AmplitudeModel amplitude;
  double band_low_hz = 200.0;
  double band_high_hz = 3400.0;
  double ramp_s = 0.010;  // raised-cosine on/off ramp
};

/// Generates a deterministic synthetic corpus under out_dir: silence-burst-
/// silence WAVs plus manifest.csv. The burst is amplitude-modulated
/// band-limited noise whose length follows the duration model. Burst starts
/// and lengths are aligned to the default endpointing frame grid so the
/// detected duration equals the generated burst length plus a constant
/// offset. Throws BadConfig.
CorpusManifest synth_corpus(const SynthConfig& cfg, std::uint64_t seed,
                            const std::string& out_dir);

/// The word list used for synthetic corpora (30 Indonesian nouns); word
/// counts beyond the list continue as word31, word32, ...
std::vector<std::string> synth_word_list(int count);

/// JSON dump of every effective config value, written next to the manifest
/// so generated corpora are self-documenting.
std::string synth_config_json(const SynthConfig& cfg, std::uint64_t seed);

}  // namespace ispear::corpus
