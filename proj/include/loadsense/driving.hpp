#pragma once

#include <span>
#include <vector>

#include "loadsense/types.hpp"

namespace loadsense {

struct LaneChange {
  double s_m = 0.0;  ///< longitudinal position where the manoeuvre starts
  int from_lane = 0;
  int to_lane = 0;
};

/// Piecewise-linear lane-centre path over longitudinal position: constant at
/// lane centres, with a linear ramp of transition_length metres starting at
/// each change point. Lane k is centred at origin_m + k * lane_width.
class IdealPath {
public:
  IdealPath(std::vector<LaneChange> changes, int initial_lane, double lane_width,
            double transition_length, double origin_m);

  double operator()(double s_m) const;

  const std::vector<LaneChange>& changes() const { return changes_; }
  double lane_width() const { return lane_width_; }
  double transition_length() const { return transition_length_; }
  double lane_center(int lane) const { return origin_m_ + lane * lane_width_; }

private:
  std::vector<LaneChange> changes_;
  int initial_lane_;
  double lane_width_;
  double transition_length_;
  double origin_m_;
};

inline constexpr double kDefaultLaneWidthM = 3.5;
inline constexpr double kDefaultTransitionLengthM = 36.0;
inline constexpr double kDeviationRateHz = 33.0;
/// 60 km/h, the undisturbed driving speed the 36 m ramp refers to.
inline constexpr double kDefaultSpeedMps = 60.0 / 3.6;

/// Throws InvalidArgument("overlapping transitions") when a change starts
/// before the previous ramp has ended, or when lanes do not chain.
IdealPath build_ideal_path(std::vector<LaneChange> changes, double lane_width = kDefaultLaneWidthM,
                           double transition_length = kDefaultTransitionLengthM,
                           int initial_lane = 0, double origin_m = 0.0);

enum class DeviationWindow {
  FullSegment,  ///< every resampled sample
  LaneChanges,  ///< only samples on a transition ramp (plus margin)
};

struct DrivingPolicy {
  double speed_mps = kDefaultSpeedMps;
  double lane_width = kDefaultLaneWidthM;
  double transition_length = kDefaultTransitionLengthM;
  DeviationWindow window = DeviationWindow::FullSegment;
  double window_margin_m = 0.0;
};

/// Derives the ideal path from target_lane changes in a trace; the
/// longitudinal position of a sample is speed * t_s.
IdealPath path_from_trace(std::span<const DrivingSample> trace, const DrivingPolicy& policy = {});

struct DeviationSeries {
  double rate_hz = kDeviationRateHz;
  std::vector<double> values;
};

/// Resamples the trace at 33 Hz on t0 + k/33 for every k with
/// t0 + k/33 <= t_last (both ends included) and returns |lateral - path(s)|.
DeviationSeries deviation_series(std::span<const DrivingSample> trace, const IdealPath& path,
                                 const DrivingPolicy& policy = {});

struct DeviationStats {
  double mean = 0.0;
  double median = 0.0;
  double min = 0.0;
  double max = 0.0;
  double std = 0.0;
};

DeviationStats deviation_stats(std::span<const double> values);

/// Average deviation over the trace under the policy's window.
double average_deviation(std::span<const DrivingSample> trace, const DrivingPolicy& policy = {});

}  // namespace loadsense
