#pragma once

#include <array>
#include <bitset>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace loadsense {

/// Thrown for malformed or inconsistent input data (CLI exit code 1).
class DataError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Thrown when an operation's precondition is violated by its arguments.
class InvalidArgument : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

enum class TaskKind { NBack, VisualSearch };

/// Ordered load levels with stable integer codes 0/1/2.
enum class LoadLevel : int { Easy = 0, Medium = 1, Hard = 2 };

inline constexpr std::array<TaskKind, 2> kAllTasks{TaskKind::NBack, TaskKind::VisualSearch};
inline constexpr std::array<LoadLevel, 3> kAllLevels{LoadLevel::Easy, LoadLevel::Medium,
                                                     LoadLevel::Hard};

constexpr int level_code(LoadLevel level) { return static_cast<int>(level); }
LoadLevel level_from_code(int code);

std::string_view to_string(TaskKind task);
std::string_view to_string(LoadLevel level);
/// Parses "nback" / "visual_search"; std::nullopt for anything else.
std::optional<TaskKind> parse_task(std::string_view text);
/// Parses "easy" / "medium" / "hard"; std::nullopt for anything else.
std::optional<LoadLevel> parse_level(std::string_view text);

struct RrSample {
  double onset_s = 0.0;
  double rr_ms = 0.0;
  bool operator==(const RrSample&) const = default;
};

struct PupilSample {
  double t_s = 0.0;
  double diameter_mm = 0.0;
  double confidence = 0.0;
  bool operator==(const PupilSample&) const = default;
};

/// Lateral position is measured in the road frame where lane k is centred at
/// k * lane_width; target_lane is the lane the driver is instructed to be in.
struct DrivingSample {
  double t_s = 0.0;
  double lateral_position_m = 0.0;
  int target_lane = 0;
  bool operator==(const DrivingSample&) const = default;
};

enum class EventKind { StimulusOnset, Response, TargetPresent, TargetAbsent };

std::string_view to_string(EventKind kind);
std::optional<EventKind> parse_event_kind(std::string_view text);

struct TaskEvent {
  double t_s = 0.0;
  EventKind kind = EventKind::StimulusOnset;
  std::optional<std::string> payload;
  bool operator==(const TaskEvent&) const = default;
};

/// One participant x task x level recording.
struct SessionSegment {
  std::string participant_id;
  TaskKind task = TaskKind::NBack;
  LoadLevel level = LoadLevel::Easy;
  double duration_s = 0.0;
  std::vector<RrSample> rr_intervals;
  std::vector<PupilSample> pupil_left;
  std::vector<PupilSample> pupil_right;
  std::vector<DrivingSample> driving;
  std::vector<TaskEvent> events;

  bool operator==(const SessionSegment&) const = default;
};

enum class Severity { Warning, Error };

struct Issue {
  Severity severity = Severity::Warning;
  std::string message;
  bool operator==(const Issue&) const = default;
};

/// Segments grouped by participant. Segments are kept in canonical
/// (participant, task, level) order, so results never depend on the order in
/// which segments were supplied.
class Dataset {
public:
  Dataset() = default;
  /// Throws DataError on a duplicated (participant, task, level) triple.
  explicit Dataset(std::vector<SessionSegment> segments);

  const std::vector<SessionSegment>& segments() const { return segments_; }
  std::size_t size() const { return segments_.size(); }
  bool empty() const { return segments_.empty(); }

  /// participant id -> indices into segments(), in canonical order.
  const std::map<std::string, std::vector<std::size_t>>& participants() const {
    return participants_;
  }
  std::vector<std::string> participant_ids() const;

  const SessionSegment* find(std::string_view participant, TaskKind task, LoadLevel level) const;

  /// Participants that have some NBack segment but not all three levels.
  std::vector<std::string> incomplete_nback_participants() const;

  bool operator==(const Dataset& other) const { return segments_ == other.segments_; }

private:
  std::vector<SessionSegment> segments_;
  std::map<std::string, std::vector<std::size_t>> participants_;
};

/// The eight model inputs, in column order.
enum class Feature : std::size_t {
  HrMean = 0,
  HrMin,
  HrMax,
  HrStd,
  HrvRmssd,
  LhipaLeft,
  LhipaRight,
  DriveAvgDev,
};

inline constexpr std::size_t kFeatureCount = 8;
inline constexpr std::array<std::string_view, kFeatureCount> kFeatureNames{
    "hr_mean",    "hr_min",      "hr_max",       "hr_std",
    "hrv_rmssd",  "lhipa_left",  "lhipa_right",  "drive_avg_dev"};

constexpr std::size_t index_of(Feature f) { return static_cast<std::size_t>(f); }
std::optional<Feature> parse_feature(std::string_view name);

struct FeatureVector {
  std::array<double, kFeatureCount> values{};
  std::bitset<kFeatureCount> missing;

  double operator[](Feature f) const { return values[index_of(f)]; }
  bool is_missing(Feature f) const { return missing.test(index_of(f)); }
  void set(Feature f, double v) {
    values[index_of(f)] = v;
    missing.reset(index_of(f));
  }
  void mark_missing(Feature f) {
    values[index_of(f)] = std::nan("");
    missing.set(index_of(f));
  }

  /// Checks the value invariants; returns a description of the first violation.
  std::optional<std::string> invariant_violation() const;
};

}  // namespace loadsense
