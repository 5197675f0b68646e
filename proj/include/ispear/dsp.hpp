#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "ispear/core.hpp"
#include "ispear/corpus.hpp"

namespace ispear::dsp {

/// Short-time-energy endpointing parameters. The threshold is relative to
/// the peak frame energy, which makes detection gain-invariant.
struct EndpointConfig {
  double frame_len_s = 0.025;
  double hop_s = 0.010;
  double rel_threshold = 0.01;
  int min_onset_frames = 3;
  int hangover_frames = 5;

  int frame_len_samples(int sample_rate) const;
  int hop_samples(int sample_rate) const;
  void validate() const;  // throws BadConfig
};

/// Speech span in sample indices, end exclusive.
struct Endpoints {
  std::size_t start = 0;
  std::size_t end = 0;
};

/// Locates speech: frame-wise energy on the hop grid, threshold at
/// rel_threshold x peak frame energy, start at the first run of
/// min_onset_frames above-threshold frames, end after the last
/// above-threshold frame plus hangover_frames hops (clamped).
/// Throws TooShort (clip shorter than one frame) and NoSpeech.
Endpoints detect_endpoints(const corpus::AudioClip& clip, const EndpointConfig& cfg = {});

struct DurationFeature {
  std::size_t duration_samples = 0;
  double duration_s = 0.0;
};

DurationFeature duration_feature(const Endpoints& ep, int sample_rate);

/// Mean absolute sample value over [start, end).
double amplitude_feature(const corpus::AudioClip& clip, const Endpoints& ep);

/// Orthogonal Daubechies analysis filters of length 2*order.
///
/// The lowpass taps h satisfy sum(h) = sqrt(2), sum(h^2) = 1 and
/// shift-orthogonality sum_k h[k] h[k+2m] = 0 for m != 0; the highpass is
/// the quadrature mirror g[k] = (-1)^k h[2*order-1-k] and annihilates
/// polynomials up to degree order-1.
struct FilterPair {
  int order = 1;
  std::vector<double> lowpass;
  std::vector<double> highpass;
};

/// Minimal-phase Daubechies pair for order in [1, 4]. Throws UnsupportedOrder.
FilterPair daubechies_filters(int order);

struct DwtLevel1 {
  std::vector<double> approx;
  std::vector<double> detail;
};

/// One analysis level with periodic extension:
///   approx[n] = sum_k h[k] x[(2n+k) mod N],  detail likewise with g.
/// Odd-length inputs are zero-padded by one sample first, so the transform
/// always sees an even N and stays exactly orthogonal (Parseval and perfect
/// reconstruction hold to machine precision). Throws EmptySignal.
DwtLevel1 dwt_level1(const std::vector<double>& signal, int order);

/// Inverse of dwt_level1 (adjoint of the orthogonal analysis operator).
/// Returns the even-length signal the analysis saw.
std::vector<double> idwt_level1(const DwtLevel1& coeffs, int order);

/// Mean of the level-1 approximation coefficients of the endpointed segment.
double approx_mean_feature(const corpus::AudioClip& clip, const Endpoints& ep, int order);

/// The six per-utterance features of one record.
struct FeatureRow {
  std::string subject_id;
  corpus::Gender gender = corpus::Gender::male;
  std::string word;
  corpus::Emotion emotion = corpus::Emotion::neutral;
  double amplitude_mean = 0.0;
  std::size_t duration_samples = 0;
  double duration_s = 0.0;
  std::array<double, 4> approx_mean{};  // db1..db4
};

struct ExtractFailure {
  corpus::UtteranceRecord record;
  std::string reason;
};

struct ExtractResult {
  std::vector<FeatureRow> rows;       // manifest order, failures omitted
  std::vector<ExtractFailure> failures;
};

/// Extracts all six features for every manifest record. Per-record failures
/// (unreadable file, NoSpeech, ...) are collected, not silently dropped;
/// throws only when every record fails.
ExtractResult extract_features(const corpus::CorpusManifest& manifest,
                               const EndpointConfig& cfg = {});

/// Feature CSV with header
/// `subject_id,gender,word,emotion,amplitude_mean,duration_samples,duration_s,db1,db2,db3,db4`;
/// floats are printed with 9 significant digits.
void write_features_csv(const std::vector<FeatureRow>& rows, const std::string& path);

}  // namespace ispear::dsp
