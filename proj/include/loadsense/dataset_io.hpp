#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "loadsense/types.hpp"

namespace loadsense {

inline constexpr double kMinDurationS = 60.0;
inline constexpr double kMaxDurationS = 300.0;
/// Pupil samples below this confidence count as gaps.
inline constexpr double kPupilConfidenceThreshold = 0.6;
inline constexpr double kMaxPupilGapFraction = 0.25;
inline constexpr std::size_t kMinRrIntervals = 30;

/// Checks every SessionSegment invariant. Returns an empty list iff the
/// segment is valid and unremarkable; Error issues make it invalid, Warning
/// issues do not. One issue per (channel, rule), never one per sample.
std::vector<Issue> validate_segment(const SessionSegment& seg);

bool has_errors(const std::vector<Issue>& issues);

/// Fraction of samples whose confidence is below kPupilConfidenceThreshold.
double pupil_gap_fraction(const std::vector<PupilSample>& samples);

struct LoadOptions {
  bool strict = false;
  unsigned threads = 1;
};

struct LoadReport {
  Dataset dataset;
  /// One line per skipped segment directory or non-fatal issue.
  std::vector<std::string> messages;
  std::size_t skipped = 0;
};

/// Reads `<root>/<participant>/<task>_<level>/` trees. Lenient mode skips and
/// reports broken segments; strict mode throws DataError on the first one.
/// Throws DataError("no segments found") when nothing usable remains.
LoadReport load_dataset(const std::filesystem::path& root, const LoadOptions& options = {});

/// Reads a single segment directory; throws DataError naming file and field.
SessionSegment read_segment(const std::filesystem::path& dir);

/// Writes one segment directory below root; numerics use shortest round-trip
/// formatting so a reload is bit-exact.
void write_segment(const std::filesystem::path& root, const SessionSegment& seg);
void write_dataset(const std::filesystem::path& root, const Dataset& dataset);

std::filesystem::path segment_directory(const std::filesystem::path& root, const SessionSegment& seg);

/// Shortest decimal representation that parses back to the same double.
std::string format_double(double value);

}  // namespace loadsense
