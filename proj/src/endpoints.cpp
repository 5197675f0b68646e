#include <algorithm>
#include <cmath>

#include "ispear/dsp.hpp"

namespace ispear::dsp {

int EndpointConfig::frame_len_samples(int sample_rate) const {
  return static_cast<int>(std::lround(frame_len_s * sample_rate));
}

int EndpointConfig::hop_samples(int sample_rate) const {
  return static_cast<int>(std::lround(hop_s * sample_rate));
}

void EndpointConfig::validate() const {
  if (!(hop_s > 0.0) || frame_len_s < hop_s)
    throw Error(ErrorCode::BadConfig, "endpoint config requires frame_len >= hop > 0");
  if (!(rel_threshold > 0.0 && rel_threshold < 1.0))
    throw Error(ErrorCode::BadConfig, "rel_threshold must be in (0, 1)");
  if (min_onset_frames < 1 || hangover_frames < 1)
    throw Error(ErrorCode::BadConfig, "frame counts must be >= 1");
}

Endpoints detect_endpoints(const corpus::AudioClip& clip, const EndpointConfig& cfg) {
  cfg.validate();
  const std::size_t n = clip.samples.size();
  const std::size_t frame = static_cast<std::size_t>(cfg.frame_len_samples(clip.sample_rate));
  const std::size_t hop = static_cast<std::size_t>(cfg.hop_samples(clip.sample_rate));
  if (frame == 0 || hop == 0)
    throw Error(ErrorCode::BadConfig, "frame/hop rounds to zero samples at this rate");
  if (n < frame) throw Error(ErrorCode::TooShort, "clip shorter than one frame");

  const std::size_t num_frames = (n - frame) / hop + 1;
  std::vector<double> energy(num_frames);
  double peak = 0.0;
  for (std::size_t f = 0; f < num_frames; ++f) {
    double e = 0.0;
    const double* x = clip.samples.data() + f * hop;
    for (std::size_t i = 0; i < frame; ++i) e += x[i] * x[i];
    energy[f] = e;
    peak = std::max(peak, e);
  }

  const double threshold = cfg.rel_threshold * peak;
  // Strictly above: an all-zero clip (peak 0) has no speech frames.
  auto above = [&](std::size_t f) { return energy[f] > threshold; };

  // First run of at least min_onset_frames above-threshold frames.
  std::size_t onset = num_frames;
  std::size_t run = 0;
  for (std::size_t f = 0; f < num_frames; ++f) {
    run = above(f) ? run + 1 : 0;
    if (run == static_cast<std::size_t>(cfg.min_onset_frames)) {
      onset = f + 1 - run;
      break;
    }
  }
  if (onset == num_frames) throw Error(ErrorCode::NoSpeech, "no speech onset found");

  std::size_t last = onset;
  for (std::size_t f = num_frames; f-- > onset;) {
    if (above(f)) {
      last = f;
      break;
    }
  }

  Endpoints ep;
  ep.start = onset * hop;
  ep.end = std::min(n, last * hop + frame + static_cast<std::size_t>(cfg.hangover_frames) * hop);
  return ep;
}

DurationFeature duration_feature(const Endpoints& ep, int sample_rate) {
  DurationFeature d;
  d.duration_samples = ep.end - ep.start;
  d.duration_s = static_cast<double>(d.duration_samples) / sample_rate;
  return d;
}

double amplitude_feature(const corpus::AudioClip& clip, const Endpoints& ep) {
  double sum = 0.0;
  for (std::size_t i = ep.start; i < ep.end; ++i) sum += std::abs(clip.samples[i]);
  return sum / static_cast<double>(ep.end - ep.start);
}

}  // namespace ispear::dsp
