#include "loadsense/driving.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace loadsense {

IdealPath::IdealPath(std::vector<LaneChange> changes, int initial_lane, double lane_width,
                     double transition_length, double origin_m)
    : changes_(std::move(changes)),
      initial_lane_(initial_lane),
      lane_width_(lane_width),
      transition_length_(transition_length),
      origin_m_(origin_m) {}

double IdealPath::operator()(double s) const {
  int lane = initial_lane_;
  for (const auto& c : changes_) {
    if (s < c.s_m) break;
    if (s < c.s_m + transition_length_) {
      const double w = (s - c.s_m) / transition_length_;
      return lane_center(c.from_lane) + w * (lane_center(c.to_lane) - lane_center(c.from_lane));
    }
    lane = c.to_lane;
  }
  return lane_center(lane);
}

IdealPath build_ideal_path(std::vector<LaneChange> changes, double lane_width,
                           double transition_length, int initial_lane, double origin_m) {
  if (!(lane_width > 0.0) || !(transition_length > 0.0))
    throw InvalidArgument("build_ideal_path: lane width and transition length must be > 0");
  int lane = initial_lane;
  for (std::size_t i = 0; i < changes.size(); ++i) {
    if (i > 0 && changes[i].s_m < changes[i - 1].s_m)
      throw InvalidArgument("build_ideal_path: change points not ordered");
    if (i > 0 && changes[i].s_m < changes[i - 1].s_m + transition_length)
      throw InvalidArgument("overlapping transitions");
    if (changes[i].from_lane != lane)
      throw InvalidArgument("build_ideal_path: change " + std::to_string(i) + " starts from lane " +
                            std::to_string(changes[i].from_lane) + " but the path is in lane " +
                            std::to_string(lane));
    lane = changes[i].to_lane;
  }
  return IdealPath(std::move(changes), initial_lane, lane_width, transition_length, origin_m);
}

IdealPath path_from_trace(std::span<const DrivingSample> trace, const DrivingPolicy& policy) {
  if (trace.empty()) throw InvalidArgument("path_from_trace: empty trace");
  std::vector<LaneChange> changes;
  for (std::size_t i = 1; i < trace.size(); ++i)
    if (trace[i].target_lane != trace[i - 1].target_lane)
      changes.push_back({policy.speed_mps * trace[i].t_s, trace[i - 1].target_lane, trace[i].target_lane});
  return build_ideal_path(std::move(changes), policy.lane_width, policy.transition_length,
                          trace.front().target_lane);
}

namespace {

bool in_change_window(double s, const IdealPath& path, double margin) {
  return std::any_of(path.changes().begin(), path.changes().end(), [&](const LaneChange& c) {
    return s >= c.s_m - margin && s <= c.s_m + path.transition_length() + margin;
  });
}

}  // namespace

DeviationSeries deviation_series(std::span<const DrivingSample> trace, const IdealPath& path,
                                 const DrivingPolicy& policy) {
  if (trace.empty()) throw InvalidArgument("deviation_series: empty trace");
  const double t0 = trace.front().t_s;
  const double t1 = trace.back().t_s;
  if (t1 - t0 < 1.0 - 1e-9) throw InvalidArgument("deviation_series: trace shorter than 1 s");

  DeviationSeries out;
  const auto count = static_cast<std::size_t>(std::floor((t1 - t0) * kDeviationRateHz + 1e-9)) + 1;
  out.values.reserve(count);
  std::size_t j = 0;
  for (std::size_t k = 0; k < count; ++k) {
    const double t = t0 + static_cast<double>(k) / kDeviationRateHz;
    while (j + 1 < trace.size() && trace[j + 1].t_s <= t) ++j;
    double lateral = trace[j].lateral_position_m;
    if (j + 1 < trace.size() && t > trace[j].t_s) {
      const double w = (t - trace[j].t_s) / (trace[j + 1].t_s - trace[j].t_s);
      lateral += w * (trace[j + 1].lateral_position_m - trace[j].lateral_position_m);
    }
    const double s = policy.speed_mps * t;
    if (policy.window == DeviationWindow::LaneChanges &&
        !in_change_window(s, path, policy.window_margin_m))
      continue;
    out.values.push_back(std::abs(lateral - path(s)));
  }
  return out;
}

DeviationStats deviation_stats(std::span<const double> values) {
  if (values.empty()) throw InvalidArgument("deviation_stats: empty series");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  DeviationStats st;
  st.min = sorted.front();
  st.max = sorted.back();
  st.median = n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
  st.mean = std::clamp(std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(n),
                       st.min, st.max);
  if (n > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - st.mean) * (v - st.mean);
    st.std = std::sqrt(ss / static_cast<double>(n - 1));
  }
  return st;
}

double average_deviation(std::span<const DrivingSample> trace, const DrivingPolicy& policy) {
  const IdealPath path = path_from_trace(trace, policy);
  const DeviationSeries dev = deviation_series(trace, path, policy);
  if (dev.values.empty()) throw DataError("no deviation samples inside the selected window");
  return deviation_stats(dev.values).mean;
}

}  // namespace loadsense
