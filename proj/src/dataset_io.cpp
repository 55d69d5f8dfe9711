#include "loadsense/dataset_io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <json.hpp>

#include "csv.hpp"
#include "loadsense/parallel.hpp"

namespace loadsense {

namespace fs = std::filesystem;
using detail::CsvTable;

namespace {

constexpr std::string_view kRrHeader = "t_s,rr_ms";
constexpr std::string_view kPupilHeader = "t_s,diameter_mm,confidence";
constexpr std::string_view kDrivingHeader = "t_s,lateral_position_m,target_lane";
constexpr std::string_view kEventsHeader = "t_s,kind,payload";

std::string fraction_text(double f) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", f);
  return buf;
}

template <typename Sample, typename TimeOf>
void check_timeline(std::vector<Issue>& issues, std::string_view channel,
                    const std::vector<Sample>& samples, double duration, TimeOf time_of,
                    bool allow_ties = false) {
  bool monotone = true;
  bool in_range = true;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double t = time_of(samples[i]);
    if (!(t >= 0.0 && t <= duration)) in_range = false;
    if (i > 0) {
      const double prev = time_of(samples[i - 1]);
      if (allow_ties ? !(t >= prev) : !(t > prev)) monotone = false;
    }
  }
  if (!monotone)
    issues.push_back({Severity::Error, std::string(channel) + ": timestamps not strictly increasing"});
  if (!in_range)
    issues.push_back({Severity::Error, std::string(channel) + ": timestamp outside [0, duration_s]"});
}

void check_pupil(std::vector<Issue>& issues, std::string_view channel,
                 const std::vector<PupilSample>& samples, double duration) {
  check_timeline(issues, channel, samples, duration, [](const PupilSample& s) { return s.t_s; });
  bool bad_conf = false;
  bool bad_diam = false;
  for (const auto& s : samples) {
    if (!(s.confidence >= 0.0 && s.confidence <= 1.0)) bad_conf = true;
    if (s.confidence > 0.0 && !(s.diameter_mm > 0.0 && std::isfinite(s.diameter_mm))) bad_diam = true;
  }
  if (bad_conf) issues.push_back({Severity::Error, std::string(channel) + ": confidence outside [0, 1]"});
  if (bad_diam)
    issues.push_back({Severity::Error, std::string(channel) + ": non-positive pupil diameter"});
  if (!samples.empty()) {
    const double gap = pupil_gap_fraction(samples);
    if (gap > kMaxPupilGapFraction)
      issues.push_back({Severity::Warning, std::string(channel) + ": pupil gap fraction " +
                                               fraction_text(gap) + " > " +
                                               fraction_text(kMaxPupilGapFraction)});
  }
}

}  // namespace

double pupil_gap_fraction(const std::vector<PupilSample>& samples) {
  if (samples.empty()) return 0.0;
  const auto gaps = std::count_if(samples.begin(), samples.end(), [](const PupilSample& s) {
    return s.confidence < kPupilConfidenceThreshold;
  });
  return static_cast<double>(gaps) / static_cast<double>(samples.size());
}

bool has_errors(const std::vector<Issue>& issues) {
  return std::any_of(issues.begin(), issues.end(),
                     [](const Issue& i) { return i.severity == Severity::Error; });
}

std::vector<Issue> validate_segment(const SessionSegment& seg) {
  std::vector<Issue> issues;
  if (seg.participant_id.empty()) issues.push_back({Severity::Error, "empty participant id"});
  if (!(seg.duration_s >= kMinDurationS && seg.duration_s <= kMaxDurationS))
    issues.push_back({Severity::Error, "duration_s " + format_double(seg.duration_s) +
                                           " outside [60, 300]"});
  const double dur = seg.duration_s;

  check_timeline(issues, "rr", seg.rr_intervals, dur, [](const RrSample& s) { return s.onset_s; });
  if (std::any_of(seg.rr_intervals.begin(), seg.rr_intervals.end(),
                  [](const RrSample& s) { return !(s.rr_ms > 0.0); }))
    issues.push_back({Severity::Error, "non-positive RR interval"});
  if (seg.rr_intervals.size() < kMinRrIntervals)
    issues.push_back({Severity::Warning, "only " + std::to_string(seg.rr_intervals.size()) +
                                             " RR intervals (< 30)"});

  check_pupil(issues, "pupil_left", seg.pupil_left, dur);
  check_pupil(issues, "pupil_right", seg.pupil_right, dur);

  check_timeline(issues, "driving", seg.driving, dur, [](const DrivingSample& s) { return s.t_s; });
  if (std::any_of(seg.driving.begin(), seg.driving.end(),
                  [](const DrivingSample& s) { return !std::isfinite(s.lateral_position_m); }))
    issues.push_back({Severity::Error, "driving: non-finite lateral position"});

  // Target markers share their stimulus onset time, so events only need to be
  // non-decreasing.
  check_timeline(issues, "events", seg.events, dur, [](const TaskEvent& e) { return e.t_s; },
                 /*allow_ties=*/true);
  bool seen_onset = false;
  bool orphan = false;
  for (const auto& e : seg.events) {
    if (e.kind == EventKind::StimulusOnset) seen_onset = true;
    if (e.kind == EventKind::Response && !seen_onset) orphan = true;
  }
  if (orphan) issues.push_back({Severity::Error, "events: response before any stimulus onset"});
  return issues;
}

std::string format_double(double value) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc()) throw std::runtime_error("format_double failed");
  return std::string(buf.data(), ptr);
}

SessionSegment read_segment(const fs::path& dir) {
  const fs::path manifest_path = dir / "manifest.json";
  if (!fs::exists(manifest_path)) throw DataError(manifest_path.string() + ": missing manifest");

  SessionSegment seg;
  nlohmann::json manifest;
  try {
    manifest = nlohmann::json::parse(detail::read_file(manifest_path));
  } catch (const nlohmann::json::exception& e) {
    throw DataError(manifest_path.string() + ": " + e.what());
  }
  auto field = [&](const char* name) -> const nlohmann::json& {
    if (!manifest.contains(name)) throw DataError(manifest_path.string() + ": missing field '" + name + "'");
    return manifest[name];
  };
  auto string_field = [&](const char* name) {
    const auto& v = field(name);
    if (!v.is_string()) throw DataError(manifest_path.string() + ": field '" + name + "' must be a string");
    return v.get<std::string>();
  };
  seg.participant_id = string_field("participant");
  const std::string task = string_field("task");
  const std::string level = string_field("level");
  auto parsed_task = parse_task(task);
  if (!parsed_task)
    throw DataError(manifest_path.string() + ": field 'task' has invalid value '" + task + "'");
  auto parsed_level = parse_level(level);
  if (!parsed_level)
    throw DataError(manifest_path.string() + ": field 'level' has invalid value '" + level + "'");
  seg.task = *parsed_task;
  seg.level = *parsed_level;
  const auto& dur = field("duration_s");
  if (!dur.is_number()) throw DataError(manifest_path.string() + ": field 'duration_s' must be numeric");
  seg.duration_s = dur.get<double>();

  if (fs::exists(dir / "rr.csv")) {
    CsvTable t(dir / "rr.csv", kRrHeader);
    seg.rr_intervals.reserve(t.rows().size());
    for (const auto& row : t.rows())
      seg.rr_intervals.push_back({t.number(row, 0, "t_s"), t.number(row, 1, "rr_ms")});
  }
  auto read_pupil = [&](const char* name, std::vector<PupilSample>& out) {
    if (!fs::exists(dir / name)) return;
    CsvTable t(dir / name, kPupilHeader);
    out.reserve(t.rows().size());
    for (const auto& row : t.rows())
      out.push_back({t.number(row, 0, "t_s"), t.number(row, 1, "diameter_mm"),
                     t.number(row, 2, "confidence")});
  };
  read_pupil("pupil_left.csv", seg.pupil_left);
  read_pupil("pupil_right.csv", seg.pupil_right);
  if (fs::exists(dir / "driving.csv")) {
    CsvTable t(dir / "driving.csv", kDrivingHeader);
    seg.driving.reserve(t.rows().size());
    for (const auto& row : t.rows())
      seg.driving.push_back({t.number(row, 0, "t_s"), t.number(row, 1, "lateral_position_m"),
                             t.integer(row, 2, "target_lane")});
  }
  if (fs::exists(dir / "events.csv")) {
    CsvTable t(dir / "events.csv", kEventsHeader);
    for (const auto& row : t.rows()) {
      TaskEvent e;
      e.t_s = t.number(row, 0, "t_s");
      auto kind = parse_event_kind(row.fields[1]);
      if (!kind)
        throw DataError(t.path().string() + ":" + std::to_string(row.line_no) +
                        ": field 'kind' has invalid value '" + std::string(row.fields[1]) + "'");
      e.kind = *kind;
      if (!row.fields[2].empty()) e.payload = std::string(row.fields[2]);
      seg.events.push_back(std::move(e));
    }
  }
  return seg;
}

LoadReport load_dataset(const fs::path& root, const LoadOptions& options) {
  if (!fs::is_directory(root)) throw DataError(root.string() + ": not a directory");

  std::vector<fs::path> dirs;
  for (const auto& participant : fs::directory_iterator(root)) {
    if (!participant.is_directory()) continue;
    for (const auto& seg_dir : fs::directory_iterator(participant.path()))
      if (seg_dir.is_directory()) dirs.push_back(seg_dir.path());
  }
  std::sort(dirs.begin(), dirs.end());

  struct Slot {
    std::optional<SessionSegment> segment;
    std::vector<std::string> messages;
    std::string error;
  };
  std::vector<Slot> slots(dirs.size());
  parallel_for(dirs.size(), options.threads, [&](std::size_t i) {
    Slot& slot = slots[i];
    try {
      SessionSegment seg = read_segment(dirs[i]);
      auto issues = validate_segment(seg);
      for (const auto& issue : issues)
        slot.messages.push_back(dirs[i].string() + ": " +
                                (issue.severity == Severity::Error ? "error: " : "warning: ") +
                                issue.message);
      if (has_errors(issues)) {
        slot.error = dirs[i].string() + ": segment failed validation";
        return;
      }
      slot.segment = std::move(seg);
    } catch (const DataError& e) {
      slot.error = e.what();
    }
  });

  LoadReport report;
  std::vector<SessionSegment> segments;
  std::map<std::tuple<std::string, TaskKind, LoadLevel>, fs::path> seen;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    Slot& slot = slots[i];
    for (auto& m : slot.messages) report.messages.push_back(std::move(m));
    if (!slot.error.empty()) {
      if (options.strict) throw DataError(slot.error);
      report.messages.push_back("skipped: " + slot.error);
      ++report.skipped;
      continue;
    }
    const auto& seg = *slot.segment;
    auto key = std::make_tuple(seg.participant_id, seg.task, seg.level);
    if (auto it = seen.find(key); it != seen.end()) {
      std::string msg = dirs[i].string() + ": duplicate (participant, task, level) of " +
                        it->second.string();
      if (options.strict) throw DataError(msg);
      report.messages.push_back("skipped: " + msg);
      ++report.skipped;
      continue;
    }
    seen.emplace(key, dirs[i]);
    segments.push_back(std::move(*slot.segment));
  }
  if (segments.empty()) throw DataError("no segments found under " + root.string());
  report.dataset = Dataset(std::move(segments));
  for (const auto& id : report.dataset.incomplete_nback_participants())
    report.messages.push_back("warning: participant " + id + " lacks some nback levels");
  return report;
}

fs::path segment_directory(const fs::path& root, const SessionSegment& seg) {
  return root / seg.participant_id /
         (std::string(to_string(seg.task)) + "_" + std::string(to_string(seg.level)));
}

namespace {

class LineWriter {
public:
  explicit LineWriter(const fs::path& path) : path_(path) { buf_.reserve(1 << 16); }
  LineWriter& operator<<(std::string_view s) {
    buf_.append(s);
    return *this;
  }
  LineWriter& operator<<(double v) {
    std::array<char, 64> tmp{};
    auto [ptr, ec] = std::to_chars(tmp.data(), tmp.data() + tmp.size(), v);
    buf_.append(tmp.data(), ptr);
    return *this;
  }
  LineWriter& operator<<(int v) {
    buf_.append(std::to_string(v));
    return *this;
  }
  ~LineWriter() noexcept(false) {
    std::ofstream out(path_, std::ios::binary | std::ios::trunc);
    out.write(buf_.data(), static_cast<std::streamsize>(buf_.size()));
    if (!out) throw DataError("cannot write " + path_.string());
  }

private:
  fs::path path_;
  std::string buf_;
};

}  // namespace

void write_segment(const fs::path& root, const SessionSegment& seg) {
  const fs::path dir = segment_directory(root, seg);
  fs::create_directories(dir);
  {
    nlohmann::ordered_json manifest;
    manifest["participant"] = seg.participant_id;
    manifest["task"] = to_string(seg.task);
    manifest["level"] = to_string(seg.level);
    manifest["duration_s"] = seg.duration_s;
    LineWriter w(dir / "manifest.json");
    w << manifest.dump(2) << "\n";
  }
  {
    LineWriter w(dir / "rr.csv");
    w << kRrHeader << "\n";
    for (const auto& s : seg.rr_intervals) w << s.onset_s << "," << s.rr_ms << "\n";
  }
  auto write_pupil = [&](const char* name, const std::vector<PupilSample>& samples) {
    LineWriter w(dir / name);
    w << kPupilHeader << "\n";
    for (const auto& s : samples) w << s.t_s << "," << s.diameter_mm << "," << s.confidence << "\n";
  };
  write_pupil("pupil_left.csv", seg.pupil_left);
  write_pupil("pupil_right.csv", seg.pupil_right);
  {
    LineWriter w(dir / "driving.csv");
    w << kDrivingHeader << "\n";
    for (const auto& s : seg.driving) w << s.t_s << "," << s.lateral_position_m << "," << s.target_lane << "\n";
  }
  {
    LineWriter w(dir / "events.csv");
    w << kEventsHeader << "\n";
    for (const auto& e : seg.events)
      w << e.t_s << "," << to_string(e.kind) << "," << e.payload.value_or("") << "\n";
  }
}

void write_dataset(const fs::path& root, const Dataset& dataset) {
  for (const auto& seg : dataset.segments()) write_segment(root, seg);
}

}  // namespace loadsense
