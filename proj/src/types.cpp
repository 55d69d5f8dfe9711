#include "loadsense/types.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <tuple>

namespace loadsense {

LoadLevel level_from_code(int code) {
  if (code < 0 || code > 2) throw InvalidArgument("load level code out of range: " + std::to_string(code));
  return static_cast<LoadLevel>(code);
}

std::string_view to_string(TaskKind task) {
  return task == TaskKind::NBack ? "nback" : "visual_search";
}

std::string_view to_string(LoadLevel level) {
  switch (level) {
    case LoadLevel::Easy: return "easy";
    case LoadLevel::Medium: return "medium";
    case LoadLevel::Hard: return "hard";
  }
  return "?";
}

std::optional<TaskKind> parse_task(std::string_view text) {
  if (text == "nback") return TaskKind::NBack;
  if (text == "visual_search") return TaskKind::VisualSearch;
  return std::nullopt;
}

std::optional<LoadLevel> parse_level(std::string_view text) {
  for (LoadLevel l : kAllLevels)
    if (text == to_string(l)) return l;
  return std::nullopt;
}

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::StimulusOnset: return "stimulus_onset";
    case EventKind::Response: return "response";
    case EventKind::TargetPresent: return "target_present";
    case EventKind::TargetAbsent: return "target_absent";
  }
  return "?";
}

std::optional<EventKind> parse_event_kind(std::string_view text) {
  for (EventKind k : {EventKind::StimulusOnset, EventKind::Response, EventKind::TargetPresent,
                      EventKind::TargetAbsent})
    if (text == to_string(k)) return k;
  return std::nullopt;
}

std::optional<Feature> parse_feature(std::string_view name) {
  for (std::size_t i = 0; i < kFeatureCount; ++i)
    if (kFeatureNames[i] == name) return static_cast<Feature>(i);
  return std::nullopt;
}

Dataset::Dataset(std::vector<SessionSegment> segments) : segments_(std::move(segments)) {
  auto key = [](const SessionSegment& s) {
    return std::make_tuple(std::cref(s.participant_id), s.task, s.level);
  };
  std::stable_sort(segments_.begin(), segments_.end(),
                   [&](const SessionSegment& a, const SessionSegment& b) { return key(a) < key(b); });
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    if (i > 0 && key(segments_[i - 1]) == key(segments_[i])) {
      const auto& s = segments_[i];
      throw DataError("duplicate segment (" + s.participant_id + ", " +
                      std::string(to_string(s.task)) + ", " + std::string(to_string(s.level)) + ")");
    }
    participants_[segments_[i].participant_id].push_back(i);
  }
}

std::vector<std::string> Dataset::participant_ids() const {
  std::vector<std::string> ids;
  ids.reserve(participants_.size());
  for (const auto& [id, _] : participants_) ids.push_back(id);
  return ids;
}

const SessionSegment* Dataset::find(std::string_view participant, TaskKind task,
                                    LoadLevel level) const {
  auto it = participants_.find(std::string(participant));
  if (it == participants_.end()) return nullptr;
  for (std::size_t i : it->second) {
    const auto& s = segments_[i];
    if (s.task == task && s.level == level) return &s;
  }
  return nullptr;
}

std::vector<std::string> Dataset::incomplete_nback_participants() const {
  std::vector<std::string> out;
  for (const auto& [id, idx] : participants_) {
    std::set<LoadLevel> levels;
    for (std::size_t i : idx)
      if (segments_[i].task == TaskKind::NBack) levels.insert(segments_[i].level);
    if (!levels.empty() && levels.size() < kAllLevels.size()) out.push_back(id);
  }
  return out;
}

std::optional<std::string> FeatureVector::invariant_violation() const {
  for (std::size_t i = 0; i < kFeatureCount; ++i) {
    if (missing.test(i)) continue;
    if (!std::isfinite(values[i])) return std::string(kFeatureNames[i]) + " is not finite";
    if (values[i] < 0.0) return std::string(kFeatureNames[i]) + " is negative";
  }
  const auto hr = [&](Feature f) { return values[index_of(f)]; };
  if (!is_missing(Feature::HrMean) && !is_missing(Feature::HrMin) && !is_missing(Feature::HrMax)) {
    if (!(hr(Feature::HrMin) <= hr(Feature::HrMean) && hr(Feature::HrMean) <= hr(Feature::HrMax)))
      return std::string("hr_min <= hr_mean <= hr_max violated");
  }
  return std::nullopt;
}

}  // namespace loadsense
