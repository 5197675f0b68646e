#include <filesystem>
#include <fstream>
#include <set>
#include <tuple>

#include "ispear/corpus.hpp"

namespace ispear::corpus {

const char* to_string(Gender g) { return g == Gender::male ? "male" : "female"; }

const char* to_string(Emotion e) {
  switch (e) {
    case Emotion::happy: return "happy";
    case Emotion::neutral: return "neutral";
    case Emotion::sad: return "sad";
  }
  return "?";
}

Gender gender_from_string(const std::string& s) {
  if (s == "male") return Gender::male;
  if (s == "female") return Gender::female;
  throw Error(ErrorCode::ParseError, "unknown gender '" + s + "'");
}

Emotion emotion_from_string(const std::string& s) {
  if (s == "happy") return Emotion::happy;
  if (s == "neutral") return Emotion::neutral;
  if (s == "sad") return Emotion::sad;
  throw Error(ErrorCode::ParseError, "unknown emotion '" + s + "'");
}

std::string CorpusManifest::resolve(const UtteranceRecord& rec) const {
  if (root.empty()) return rec.path;
  return (std::filesystem::path(root) / rec.path).string();
}

static const char* kManifestHeader = "path,subject_id,gender,word,emotion";

CorpusManifest load_manifest(const std::string& path, bool strict_shape) {
  auto lines = read_lines(path);
  if (lines.empty())
    throw Error(ErrorCode::ParseError, path + ": empty manifest");
  if (lines[0] != kManifestHeader)
    throw Error(ErrorCode::ParseError,
                path + ": bad header, expected '" + std::string(kManifestHeader) + "'");
  if (lines.size() == 1)
    throw Error(ErrorCode::ParseError, path + ": manifest has no records");

  CorpusManifest manifest;
  manifest.root = std::filesystem::path(path).parent_path().string();

  std::set<std::tuple<std::string, std::string, std::string>> triples;
  std::set<std::string> subjects, words, emotions;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto fields = split_csv_line(lines[i]);
    if (fields.size() != 5)
      throw Error(ErrorCode::ParseError,
                  path + ": line " + std::to_string(i + 1) + " has " +
                      std::to_string(fields.size()) + " fields, expected 5");
    UtteranceRecord rec;
    rec.path = fields[0];
    rec.subject_id = fields[1];
    try {
      rec.gender = gender_from_string(fields[2]);
      rec.emotion = emotion_from_string(fields[4]);
    } catch (const Error& e) {
      throw Error(ErrorCode::ParseError,
                  path + ": line " + std::to_string(i + 1) + ": " + e.what());
    }
    rec.word = fields[3];
    if (rec.path.empty() || rec.subject_id.empty() || rec.word.empty())
      throw Error(ErrorCode::ParseError,
                  path + ": line " + std::to_string(i + 1) + ": empty field");

    auto key = std::make_tuple(rec.subject_id, rec.word, fields[4]);
    if (!triples.insert(key).second)
      throw Error(ErrorCode::DuplicateRecord,
                  path + ": duplicate (subject, word, emotion) = (" + rec.subject_id +
                      ", " + rec.word + ", " + fields[4] + ")");
    subjects.insert(rec.subject_id);
    words.insert(rec.word);
    emotions.insert(fields[4]);
    manifest.records.push_back(std::move(rec));
  }

  if (strict_shape) {
    std::size_t expected = subjects.size() * words.size() * emotions.size();
    if (expected != manifest.records.size())
      throw Error(ErrorCode::ShapeMismatch,
                  path + ": " + std::to_string(manifest.records.size()) + " records but " +
                      std::to_string(subjects.size()) + " subjects x " +
                      std::to_string(words.size()) + " words x " +
                      std::to_string(emotions.size()) + " emotions = " +
                      std::to_string(expected));
  }
  return manifest;
}

void write_manifest(const CorpusManifest& manifest, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot create " + path);
  out << kManifestHeader << "\n";
  for (const auto& rec : manifest.records) {
    out << rec.path << ',' << rec.subject_id << ',' << to_string(rec.gender) << ','
        << rec.word << ',' << to_string(rec.emotion) << "\n";
  }
  if (!out) throw Error(ErrorCode::IoError, "write failure on " + path);
}

}  // namespace ispear::corpus
