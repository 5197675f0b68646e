#include <fstream>

#include "ispear/dsp.hpp"

namespace ispear::dsp {

ExtractResult extract_features(const corpus::CorpusManifest& manifest,
                               const EndpointConfig& cfg) {
  ExtractResult result;
  for (const auto& rec : manifest.records) {
    try {
      corpus::AudioClip clip = corpus::read_wav(manifest.resolve(rec));
      Endpoints ep = detect_endpoints(clip, cfg);
      DurationFeature dur = duration_feature(ep, clip.sample_rate);

      FeatureRow row;
      row.subject_id = rec.subject_id;
      row.gender = rec.gender;
      row.word = rec.word;
      row.emotion = rec.emotion;
      row.amplitude_mean = amplitude_feature(clip, ep);
      row.duration_samples = dur.duration_samples;
      row.duration_s = dur.duration_s;
      for (int order = 1; order <= 4; ++order)
        row.approx_mean[static_cast<std::size_t>(order - 1)] =
            approx_mean_feature(clip, ep, order);
      result.rows.push_back(std::move(row));
    } catch (const Error& e) {
      result.failures.push_back({rec, std::string(error_code_name(e.code())) + ": " + e.what()});
    }
  }
  if (result.rows.empty())
    throw Error(ErrorCode::Empty, "feature extraction failed for every record");
  return result;
}

void write_features_csv(const std::vector<FeatureRow>& rows, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot create " + path);
  out << "subject_id,gender,word,emotion,amplitude_mean,duration_samples,duration_s,"
         "db1,db2,db3,db4\n";
  for (const auto& row : rows) {
    out << row.subject_id << ',' << corpus::to_string(row.gender) << ',' << row.word << ','
        << corpus::to_string(row.emotion) << ',' << fmt_g9(row.amplitude_mean) << ','
        << row.duration_samples << ',' << fmt_g9(row.duration_s);
    for (double v : row.approx_mean) out << ',' << fmt_g9(v);
    out << "\n";
  }
  if (!out) throw Error(ErrorCode::IoError, "write failure on " + path);
}

}  // namespace ispear::dsp
