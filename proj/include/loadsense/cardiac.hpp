#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace loadsense {

/// RR artifact rejection bounds.
struct RrPolicy {
  double min_rr_ms = 300.0;
  double max_rr_ms = 2000.0;
  /// Maximum relative change versus the last accepted interval.
  double max_successive_change = 0.25;

  /// Throws InvalidArgument when the bounds are inconsistent.
  void validate() const;
};

struct HrStats {
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
  double std = 0.0;
};

struct CardiacFeatures {
  double hr_mean = 0.0;
  double hr_min = 0.0;
  double hr_max = 0.0;
  double hr_std = 0.0;
  double rmssd = 0.0;
  std::size_t n_beats_used = 0;
};

/// Keeps intervals inside [min_rr_ms, max_rr_ms] whose change relative to the
/// previously kept interval stays within max_successive_change. Throws
/// DataError("no valid RR intervals") when nothing survives.
std::vector<double> clean_rr(std::span<const double> rr_ms, const RrPolicy& policy = {});

/// Per-beat heart rate 60000 / rr, then mean/min/max and sample std (n-1).
HrStats hr_stats(std::span<const double> rr_ms);

/// Root mean square of successive differences, in milliseconds.
double rmssd(std::span<const double> rr_ms);

/// clean_rr followed by hr_stats and rmssd.
CardiacFeatures cardiac_features(std::span<const double> rr_ms, const RrPolicy& policy = {});

}  // namespace loadsense
