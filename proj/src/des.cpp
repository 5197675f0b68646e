#include <algorithm>
#include <charconv>
#include <map>
#include <set>

#include "ispear/corpus.hpp"
#include "ispear/stats.hpp"

namespace ispear::corpus {

const std::array<const char*, 16> kDesEmotionNames = {
    "surprise", "anger",         "anxiety",    "calm", "confusion", "contempt",
    "disgust",  "embarrassment", "enthusiasm", "fear", "shame",     "happiness",
    "interest", "love",          "pride",      "sadness"};

int des_score_index(Emotion targeted) {
  switch (targeted) {
    case Emotion::happy: return 11;   // happiness
    case Emotion::neutral: return 3;  // calm
    case Emotion::sad: return 15;     // sadness
  }
  return 3;
}

std::vector<DesRecord> load_des_csv(const std::string& path) {
  auto lines = read_lines(path);
  std::string expected = "subject_id,phase,targeted_emotion";
  for (int i = 1; i <= 16; ++i) {
    char col[8];
    std::snprintf(col, sizeof(col), ",s%02d", i);
    expected += col;
  }
  if (lines.empty() || lines[0] != expected)
    throw Error(ErrorCode::ParseError, path + ": bad DES header");

  std::vector<DesRecord> records;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto fields = split_csv_line(lines[i]);
    if (fields.size() != 19)
      throw Error(ErrorCode::ParseError,
                  path + ": line " + std::to_string(i + 1) + ": expected 19 fields");
    DesRecord rec;
    rec.subject_id = fields[0];
    if (fields[1] == "pre")
      rec.phase = DesPhase::pre;
    else if (fields[1] == "post")
      rec.phase = DesPhase::post;
    else
      throw Error(ErrorCode::ParseError,
                  path + ": line " + std::to_string(i + 1) + ": bad phase '" + fields[1] + "'");
    rec.targeted_emotion = emotion_from_string(fields[2]);
    for (int k = 0; k < 16; ++k) {
      int v = 0;
      auto& f = fields[3 + k];
      auto res = std::from_chars(f.data(), f.data() + f.size(), v);
      if (res.ec != std::errc() || res.ptr != f.data() + f.size() || v < 1 || v > 5)
        throw Error(ErrorCode::ParseError,
                    path + ": line " + std::to_string(i + 1) + ": score '" + f +
                        "' not an integer in [1,5]");
      rec.scores[static_cast<std::size_t>(k)] = v;
    }
    records.push_back(std::move(rec));
  }
  return records;
}

namespace {

// Records for the targeted session, keyed by subject. Duplicate subjects in
// one phase are a malformed input.
std::map<std::string, const DesRecord*> by_subject(const std::vector<DesRecord>& list,
                                                   Emotion targeted) {
  std::map<std::string, const DesRecord*> out;
  for (const auto& rec : list) {
    if (rec.targeted_emotion != targeted) continue;
    if (!out.emplace(rec.subject_id, &rec).second)
      throw Error(ErrorCode::SubjectMismatch,
                  "subject '" + rec.subject_id + "' appears twice in one phase");
  }
  return out;
}

void check_same_subjects(const std::map<std::string, const DesRecord*>& pre,
                         const std::map<std::string, const DesRecord*>& post) {
  for (const auto& [id, _] : pre)
    if (!post.count(id))
      throw Error(ErrorCode::SubjectMismatch, "subject '" + id + "' missing from post list");
  for (const auto& [id, _] : post)
    if (!pre.count(id))
      throw Error(ErrorCode::SubjectMismatch, "subject '" + id + "' missing from pre list");
}

ValidationVerdict verdict_from(double p1, double p2, double alpha) {
  ValidationVerdict v;
  v.condition1_p = p1;
  v.condition2_p = p2;
  v.alpha = alpha;
  v.valid = p1 <= alpha && p2 <= alpha;
  return v;
}

}  // namespace

ValidationVerdict des_validate(const std::vector<DesRecord>& pre,
                               const std::vector<DesRecord>& post, Emotion targeted,
                               double alpha) {
  auto pre_map = by_subject(pre, targeted);
  auto post_map = by_subject(post, targeted);
  check_same_subjects(pre_map, post_map);
  if (pre_map.size() < 2)
    throw Error(ErrorCode::DegenerateGroups,
                "need at least 2 subjects, have " + std::to_string(pre_map.size()));

  const int idx = des_score_index(targeted);
  std::vector<double> pre_scores, post_scores, post_other;
  for (const auto& [id, rec] : pre_map)
    pre_scores.push_back(rec->scores[static_cast<std::size_t>(idx)]);
  for (const auto& [id, rec] : post_map) {
    post_scores.push_back(rec->scores[static_cast<std::size_t>(idx)]);
    for (int k = 0; k < 16; ++k)
      if (k != idx) post_other.push_back(rec->scores[static_cast<std::size_t>(k)]);
  }

  auto c1 = stats::anova_oneway({pre_scores, post_scores});
  auto c2 = stats::anova_oneway({post_scores, post_other});
  return verdict_from(c1.p_value, c2.p_value, alpha);
}

std::vector<SubjectVerdict> des_validate_by_subject(const std::vector<DesRecord>& pre,
                                                    const std::vector<DesRecord>& post,
                                                    Emotion targeted, double alpha) {
  auto pre_map = by_subject(pre, targeted);
  auto post_map = by_subject(post, targeted);
  check_same_subjects(pre_map, post_map);

  const int idx = des_score_index(targeted);
  std::vector<SubjectVerdict> out;
  for (const auto& [id, pre_rec] : pre_map) {
    const DesRecord* post_rec = post_map.at(id);
    std::vector<double> pre_all(pre_rec->scores.begin(), pre_rec->scores.end());
    std::vector<double> post_all(post_rec->scores.begin(), post_rec->scores.end());
    std::vector<double> targeted_score = {
        static_cast<double>(post_rec->scores[static_cast<std::size_t>(idx)])};
    std::vector<double> other_scores;
    for (int k = 0; k < 16; ++k)
      if (k != idx) other_scores.push_back(post_rec->scores[static_cast<std::size_t>(k)]);

    auto c1 = stats::anova_oneway({pre_all, post_all});
    auto c2 = stats::anova_oneway({targeted_score, other_scores});
    out.push_back({id, verdict_from(c1.p_value, c2.p_value, alpha)});
  }
  return out;
}

}  // namespace ispear::corpus
