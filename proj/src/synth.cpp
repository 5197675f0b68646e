#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "ispear/corpus.hpp"

namespace ispear::corpus {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Biquad {
  double b0, b1, b2, a1, a2;
  double z1 = 0.0, z2 = 0.0;

  double step(double x) {
    double y = b0 * x + z1;
    z1 = b1 * x - a1 * y + z2;
    z2 = b2 * x - a2 * y;
    return y;
  }
};

Biquad make_lowpass(double freq_hz, int rate) {
  double w = 2.0 * kPi * freq_hz / rate;
  double alpha = std::sin(w) / std::sqrt(2.0);
  double cw = std::cos(w);
  double a0 = 1.0 + alpha;
  return {(1.0 - cw) / 2.0 / a0, (1.0 - cw) / a0, (1.0 - cw) / 2.0 / a0,
          -2.0 * cw / a0, (1.0 - alpha) / a0};
}

Biquad make_highpass(double freq_hz, int rate) {
  double w = 2.0 * kPi * freq_hz / rate;
  double alpha = std::sin(w) / std::sqrt(2.0);
  double cw = std::cos(w);
  double a0 = 1.0 + alpha;
  return {(1.0 + cw) / 2.0 / a0, -(1.0 + cw) / a0, (1.0 + cw) / 2.0 / a0,
          -2.0 * cw / a0, (1.0 - alpha) / a0};
}

void check_config(const SynthConfig& cfg) {
  auto bad = [](const std::string& msg) { throw Error(ErrorCode::BadConfig, msg); };
  if (cfg.subjects <= 0) bad("subjects must be positive");
  if (cfg.words <= 0) bad("words must be positive");
  if (cfg.sample_rate <= 0) bad("sample_rate must be positive");
  if (cfg.duration.subject_sd < 0.0) bad("duration subject_sd must be non-negative");
  if (cfg.duration.residual_sd < 0.0) bad("duration residual_sd must be non-negative");
  if (cfg.duration.intercept <= 0.0) bad("duration intercept must be positive");
  if (cfg.amplitude.level_sd < 0.0) bad("amplitude level_sd must be non-negative");
  if (!(cfg.amplitude.min_level > 0.0 && cfg.amplitude.max_level <= 1.0 &&
        cfg.amplitude.min_level <= cfg.amplitude.max_level))
    bad("amplitude levels must satisfy 0 < min <= max <= 1");
  if (!(cfg.band_low_hz > 0.0 && cfg.band_low_hz < cfg.band_high_hz &&
        cfg.band_high_hz < cfg.sample_rate / 2.0))
    bad("noise band must satisfy 0 < low < high < Nyquist");
  if (cfg.ramp_s <= 0.0) bad("ramp_s must be positive");
}

double emotion_offset(const DurationModel& m, Emotion e) {
  switch (e) {
    case Emotion::happy: return 0.0;
    case Emotion::neutral: return m.neutral_offset;
    case Emotion::sad: return m.sad_offset;
  }
  return 0.0;
}

}  // namespace

std::vector<std::string> synth_word_list(int count) {
  static const std::vector<std::string> base = {
      "perut",  "mobil", "permen", "hujan",  "akris",  "kelapa", "kabin",  "garam",
      "soda",   "eksport", "kamera", "darat", "waktu",  "rumah",  "ikan",   "album",
      "pasar",  "motor", "swasta", "acara",  "tangan", "momen",  "batik",  "negara",
      "baja",   "surat", "calon",  "payung", "warga",  "daerah"};
  std::vector<std::string> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    if (i < static_cast<int>(base.size()))
      out.push_back(base[static_cast<std::size_t>(i)]);
    else
      out.push_back("word" + std::to_string(i + 1));
  }
  return out;
}

CorpusManifest synth_corpus(const SynthConfig& cfg, std::uint64_t seed,
                            const std::string& out_dir) {
  check_config(cfg);

  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(fs::path(out_dir) / "wav", ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create " + out_dir + "/wav");

  // Burst placement is aligned to the default endpointing grid (10 ms hop,
  // 25 ms frames): the burst starts at an offset of hop/2 modulo hop and its
  // length sits on the same half-hop lattice. With the 10 ms raised-cosine
  // ramps this keeps every frame's energy decisively above or below the
  // relative threshold, so the detected duration is the burst length plus a
  // constant offset instead of carrying per-clip frame-quantization noise.
  const int rate = cfg.sample_rate;
  const int hop = static_cast<int>(std::lround(0.010 * rate));
  const int half = hop / 2;
  const int lead = 6 * hop + half;
  const int tail = 9 * hop;
  const int ramp = static_cast<int>(std::lround(cfg.ramp_s * rate));

  const auto words = synth_word_list(cfg.words);
  const int id_width = std::max(2, static_cast<int>(std::to_string(cfg.subjects).size()));
  const Emotion emotions[3] = {Emotion::happy, Emotion::neutral, Emotion::sad};

  CorpusManifest manifest;
  manifest.root = out_dir;

  for (int s = 0; s < cfg.subjects; ++s) {
    std::string digits = std::to_string(s + 1);
    if (static_cast<int>(digits.size()) < id_width)
      digits.insert(0, static_cast<std::size_t>(id_width) - digits.size(), '0');
    const std::string sid = "s" + digits;
    Gender gender = (s % 2 == 0) ? Gender::male : Gender::female;
    Rng subject_rng(derive_seed(derive_seed(seed, 0x5bULL), static_cast<std::uint64_t>(s)));
    const double subject_offset = subject_rng.normal(0.0, cfg.duration.subject_sd);
    const double gender_offset =
        (gender == Gender::male) ? cfg.duration.male_offset : cfg.duration.female_offset;

    for (int w = 0; w < cfg.words; ++w) {
      for (int e = 0; e < 3; ++e) {
        const std::uint64_t clip_index =
            (static_cast<std::uint64_t>(s) * static_cast<std::uint64_t>(cfg.words) +
             static_cast<std::uint64_t>(w)) *
                3ULL +
            static_cast<std::uint64_t>(e);
        Rng rng(derive_seed(derive_seed(seed, 0xc11bULL), clip_index));

        double target = cfg.duration.intercept + emotion_offset(cfg.duration, emotions[e]) +
                        gender_offset + subject_offset +
                        rng.normal(0.0, cfg.duration.residual_sd);
        long k = std::lround((target - half) / hop);
        k = std::max(k, 3L);
        const int burst_len = half + static_cast<int>(k) * hop;

        double level = rng.normal(cfg.amplitude.mean_level, cfg.amplitude.level_sd);
        level = std::clamp(level, cfg.amplitude.min_level, cfg.amplitude.max_level);

        // Band-limited Gaussian noise, unit RMS, raised-cosine ramps.
        std::vector<double> burst(static_cast<std::size_t>(burst_len));
        Biquad hp = make_highpass(cfg.band_low_hz, rate);
        Biquad lp = make_lowpass(cfg.band_high_hz, rate);
        double energy = 0.0;
        for (auto& v : burst) {
          v = lp.step(hp.step(rng.normal()));
          energy += v * v;
        }
        const double rms = std::sqrt(std::max(energy / burst_len, 1e-24));
        const int edge = std::min(ramp, burst_len / 2);
        for (int i = 0; i < burst_len; ++i) {
          double env = 1.0;
          if (i < edge)
            env = 0.5 * (1.0 - std::cos(kPi * (i + 1) / edge));
          else if (i >= burst_len - edge)
            env = 0.5 * (1.0 - std::cos(kPi * (burst_len - i) / edge));
          burst[static_cast<std::size_t>(i)] *= env * level / rms;
        }

        AudioClip clip;
        clip.sample_rate = rate;
        clip.samples.assign(static_cast<std::size_t>(lead + burst_len + tail), 0.0);
        std::copy(burst.begin(), burst.end(),
                  clip.samples.begin() + static_cast<std::ptrdiff_t>(lead));

        UtteranceRecord rec;
        rec.subject_id = sid;
        rec.gender = gender;
        rec.word = words[static_cast<std::size_t>(w)];
        rec.emotion = emotions[e];
        rec.path = "wav/" + rec.subject_id + "_" + rec.word + "_" +
                   to_string(rec.emotion) + ".wav";
        write_wav(clip, manifest.resolve(rec));
        manifest.records.push_back(std::move(rec));
      }
    }
  }

  write_manifest(manifest, (fs::path(out_dir) / "manifest.csv").string());
  return manifest;
}

std::string synth_config_json(const SynthConfig& cfg, std::uint64_t seed) {
  std::string s;
  s += "{\n";
  s += "  \"seed\": " + std::to_string(seed) + ",\n";
  s += "  \"subjects\": " + std::to_string(cfg.subjects) + ",\n";
  s += "  \"words\": " + std::to_string(cfg.words) + ",\n";
  s += "  \"sample_rate\": " + std::to_string(cfg.sample_rate) + ",\n";
  s += "  \"duration\": {\n";
  s += "    \"intercept\": " + fmt_g9(cfg.duration.intercept) + ",\n";
  s += "    \"neutral_offset\": " + fmt_g9(cfg.duration.neutral_offset) + ",\n";
  s += "    \"sad_offset\": " + fmt_g9(cfg.duration.sad_offset) + ",\n";
  s += "    \"male_offset\": " + fmt_g9(cfg.duration.male_offset) + ",\n";
  s += "    \"female_offset\": " + fmt_g9(cfg.duration.female_offset) + ",\n";
  s += "    \"subject_sd\": " + fmt_g9(cfg.duration.subject_sd) + ",\n";
  s += "    \"residual_sd\": " + fmt_g9(cfg.duration.residual_sd) + "\n";
  s += "  },\n";
  s += "  \"amplitude\": {\n";
  s += "    \"mean_level\": " + fmt_g9(cfg.amplitude.mean_level) + ",\n";
  s += "    \"level_sd\": " + fmt_g9(cfg.amplitude.level_sd) + ",\n";
  s += "    \"min_level\": " + fmt_g9(cfg.amplitude.min_level) + ",\n";
  s += "    \"max_level\": " + fmt_g9(cfg.amplitude.max_level) + "\n";
  s += "  },\n";
  s += "  \"band_low_hz\": " + fmt_g9(cfg.band_low_hz) + ",\n";
  s += "  \"band_high_hz\": " + fmt_g9(cfg.band_high_hz) + ",\n";
  s += "  \"ramp_s\": " + fmt_g9(cfg.ramp_s) + "\n";
  s += "}\n";
  return s;
}

}  // namespace ispear::corpus
