#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "loadsense/driving.hpp"
#include "loadsense/task_performance.hpp"

using namespace loadsense;

namespace {

std::vector<DrivingSample> trace_on(const IdealPath& path, double seconds, double offset = 0.0,
                                    double rate = 33.0) {
  std::vector<DrivingSample> out;
  const auto n = static_cast<int>(std::lround(seconds * rate));
  for (int k = 0; k < n; ++k) {
    const double t = k / rate;
    out.push_back({t, path(kDefaultSpeedMps * t) + offset, 0});
  }
  return out;
}

std::vector<TaskEvent> nback_log(int targets, int hits, int non_targets, int false_positives) {
  std::vector<TaskEvent> ev;
  double t = 0.0;
  for (int i = 0; i < targets; ++i, t += 3.0) {
    ev.push_back({t, EventKind::StimulusOnset, "5"});
    ev.push_back({t, EventKind::TargetPresent, {}});
    if (i < hits) ev.push_back({t + 0.6, EventKind::Response, {}});
  }
  for (int i = 0; i < non_targets; ++i, t += 3.0) {
    ev.push_back({t, EventKind::StimulusOnset, "2"});
    ev.push_back({t, EventKind::TargetAbsent, {}});
    if (i < false_positives) ev.push_back({t + 0.6, EventKind::Response, {}});
  }
  return ev;
}

}  // namespace

TEST(IdealPath, NoChangesIsConstant) {
  const auto path = build_ideal_path({});
  for (double s : {0.0, 10.0, 1e4}) EXPECT_EQ(path(s), 0.0);
  const auto lane2 = build_ideal_path({}, 3.5, 36.0, 2);
  EXPECT_EQ(lane2(55.0), 7.0);
}

TEST(IdealPath, SingleChange) {
  const auto path = build_ideal_path({{100.0, 0, 1}}, 3.5);
  EXPECT_DOUBLE_EQ(path(100), 0.0);
  EXPECT_DOUBLE_EQ(path(118), 1.75);
  EXPECT_DOUBLE_EQ(path(136), 3.5);
  EXPECT_DOUBLE_EQ(path(50), 0.0);
  EXPECT_DOUBLE_EQ(path(500), 3.5);
}

TEST(IdealPath, OverlappingTransitions) {
  try {
    build_ideal_path({{100.0, 0, 1}, {120.0, 1, 0}});
    FAIL();
  } catch (const InvalidArgument& e) {
    EXPECT_STREQ(e.what(), "overlapping transitions");
  }
  EXPECT_NO_THROW(build_ideal_path({{100.0, 0, 1}, {136.0, 1, 0}}));
  EXPECT_THROW(build_ideal_path({{100.0, 1, 0}}), InvalidArgument);
}

TEST(IdealPath, FromTrace) {
  std::vector<DrivingSample> trace;
  for (int k = 0; k < 33 * 20; ++k) trace.push_back({k / 33.0, 0.0, k / 33.0 >= 6.0 ? 1 : 0});
  const auto path = path_from_trace(trace);
  ASSERT_EQ(path.changes().size(), 1u);
  EXPECT_NEAR(path.changes()[0].s_m, 6.0 * kDefaultSpeedMps, 1.0);
  EXPECT_EQ(path.changes()[0].to_lane, 1);
}

TEST(Deviation, OnPathIsZero) {
  const auto path = build_ideal_path({{50.0, 0, 1}, {150.0, 1, 0}});
  const auto trace = trace_on(path, 20.0);
  const auto dev = deviation_series(trace, path);
  for (double v : dev.values) EXPECT_NEAR(v, 0.0, 1e-9);
}

TEST(Deviation, ConstantOffset) {
  const auto path = build_ideal_path({});
  const auto trace = trace_on(path, 20.0, 0.5);
  const auto dev = deviation_series(trace, path);
  for (double v : dev.values) EXPECT_NEAR(v, 0.5, 1e-12);
  EXPECT_NEAR(average_deviation(trace), 0.5, 1e-12);
}

TEST(Deviation, TenSecondTraceGives330Samples) {
  // 330 samples at 33 Hz span 10 s; resampling keeps both ends of [t0, t_last]
  const auto path = build_ideal_path({});
  const auto trace = trace_on(path, 10.0);
  ASSERT_EQ(trace.size(), 330u);
  EXPECT_EQ(deviation_series(trace, path).values.size(), 330u);
  // a 100 Hz recording of the same 10 s resamples to the same grid
  const auto fast = trace_on(path, 10.0, 0.0, 100.0);
  const double t_last = fast.back().t_s;
  EXPECT_EQ(deviation_series(fast, path).values.size(),
            static_cast<std::size_t>(std::floor(t_last * 33.0)) + 1);
}

TEST(Deviation, LaneChangeWindow) {
  const auto path = build_ideal_path({{100.0, 0, 1}});
  auto trace = trace_on(path, 20.0, 0.2);
  DrivingPolicy policy;
  policy.window = DeviationWindow::LaneChanges;
  const auto all = deviation_series(trace, path);
  const auto window = deviation_series(trace, path, policy);
  EXPECT_LT(window.values.size(), all.values.size());
  EXPECT_GT(window.values.size(), 0u);
}

TEST(DeviationStats, Examples) {
  auto st = deviation_stats(std::vector<double>{0, 0, 0});
  EXPECT_EQ(st.mean, 0);
  EXPECT_EQ(st.median, 0);
  EXPECT_EQ(st.min, 0);
  EXPECT_EQ(st.max, 0);
  EXPECT_EQ(st.std, 0);

  st = deviation_stats(std::vector<double>{0.1, 0.3});
  EXPECT_NEAR(st.mean, 0.2, 1e-15);
  EXPECT_NEAR(st.median, 0.2, 1e-15);
  EXPECT_EQ(st.min, 0.1);
  EXPECT_EQ(st.max, 0.3);
  EXPECT_NEAR(st.std, 0.1414, 1e-4);

  st = deviation_stats(std::vector<double>(7, 0.5));
  EXPECT_EQ(st.mean, 0.5);
  EXPECT_EQ(st.median, 0.5);
  EXPECT_EQ(st.std, 0.0);
}

TEST(NBack, Examples) {
  auto s = nback_rate(nback_log(10, 10, 30, 0));
  EXPECT_EQ(s.targets, 10);
  EXPECT_DOUBLE_EQ(s.rate, 1.0);
  s = nback_rate(nback_log(10, 8, 30, 2));
  EXPECT_EQ(s.hits, 8);
  EXPECT_EQ(s.false_positives, 2);
  EXPECT_DOUBLE_EQ(s.rate, 0.6);
  s = nback_rate(nback_log(4, 0, 10, 8));
  EXPECT_DOUBLE_EQ(s.rate, -2.0);
  EXPECT_THROW(nback_rate(nback_log(0, 0, 10, 0)), DataError);
}

TEST(NBack, LateResponseIsNotAHit) {
  std::vector<TaskEvent> ev{{0.0, EventKind::StimulusOnset, "1"},
                            {0.0, EventKind::TargetPresent, {}},
                            {3.5, EventKind::Response, {}}};
  EXPECT_EQ(nback_rate(ev).hits, 0);
}

TEST(VisualSearch, Examples) {
  std::vector<TaskEvent> ev{{0.0, EventKind::StimulusOnset, {}},
                            {0.0, EventKind::TargetPresent, {}},
                            {1.2, EventKind::Response, {}},
                            {3.0, EventKind::StimulusOnset, {}},
                            {3.0, EventKind::TargetPresent, {}},
                            {4.5, EventKind::Response, {}}};
  auto s = visual_search_perf(ev);
  ASSERT_TRUE(s.mean_rt_s.has_value());
  EXPECT_NEAR(*s.mean_rt_s, 1.35, 1e-12);
  EXPECT_EQ(s.accuracy, 1.0);

  std::vector<TaskEvent> silent{{0.0, EventKind::StimulusOnset, {}},
                                {0.0, EventKind::TargetPresent, {}},
                                {3.0, EventKind::StimulusOnset, {}},
                                {3.0, EventKind::TargetAbsent, {}}};
  s = visual_search_perf(silent);
  EXPECT_FALSE(s.mean_rt_s.has_value());
  EXPECT_EQ(s.accuracy, 0.5);
  EXPECT_THROW(visual_search_perf(std::vector<TaskEvent>{}), DataError);
}
