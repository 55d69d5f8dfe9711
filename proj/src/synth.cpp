#include "loadsense/synth.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "csv.hpp"
#include "loadsense/dataset_io.hpp"
#include "loadsense/driving.hpp"
#include "loadsense/parallel.hpp"

namespace loadsense {

namespace {

LevelTargets level(Moments hr, Moments rmssd, Moments lr, Moments ll, Moments drive, Moments rt,
                   double rate) {
  return {hr, rmssd, lr, ll, drive, rt, rate};
}

}  // namespace

GeneratorConfig::GeneratorConfig() {
  // Pooled means and sds per condition. Reaction times and n-back rates are
  // used for both tasks' logs; only the matching task scores them.
  targets[0] = {
      level({77.49, 12.60}, {37.79, 19.50}, {2.38, 0.50}, {2.37, 0.51}, {0.15, 0.08}, {1.29, 0.16}, 0.96),
      level({82.54, 14.17}, {31.86, 15.99}, {2.28, 0.31}, {2.34, 0.34}, {0.21, 0.13}, {1.44, 0.18}, 0.85),
      level({82.97, 14.78}, {30.34, 14.42}, {2.29, 0.43}, {2.29, 0.30}, {0.23, 0.16}, {1.75, 0.22}, 0.36)};
  targets[1] = {
      level({77.29, 11.81}, {38.37, 18.53}, {2.46, 0.58}, {2.30, 0.22}, {0.24, 0.11}, {1.29, 0.16}, 0.96),
      level({78.58, 12.00}, {36.52, 17.20}, {2.39, 0.56}, {2.30, 0.24}, {0.24, 0.12}, {1.44, 0.18}, 0.85),
      level({78.63, 12.70}, {37.70, 19.36}, {2.44, 0.58}, {2.30, 0.24}, {0.27, 0.12}, {1.75, 0.22}, 0.36)};
}

namespace {

// Visits every numeric field under its config-file key.
template <typename Config, typename Fn>
void for_each_field(Config& c, Fn&& fn) {
  for (TaskKind task : kAllTasks)
    for (LoadLevel lvl : kAllLevels) {
      auto& t = c.at(task, lvl);
      const std::string prefix = std::string(to_string(task)) + "." + std::string(to_string(lvl)) + ".";
      auto moments = [&](const char* name, auto& m) {
        fn(prefix + name + "_mean", m.mean);
        fn(prefix + name + "_sd", m.sd);
      };
      moments("hr_bpm", t.hr_bpm);
      moments("rmssd_ms", t.rmssd_ms);
      moments("lhipa_right", t.lhipa_right);
      moments("lhipa_left", t.lhipa_left);
      moments("drive_dev_m", t.drive_dev_m);
      moments("reaction_time_s", t.reaction_time_s);
      fn(prefix + "nback_rate", t.nback_rate);
    }
  fn("share.hr", c.shares.hr);
  fn("share.rmssd", c.shares.rmssd);
  fn("share.drive", c.shares.drive);
  fn("heart_baseline_correlation", c.heart_baseline_correlation);
  fn("min_duration_s", c.min_duration_s);
  fn("max_duration_s", c.max_duration_s);
  fn("pupil.rate_hz", c.pupil.rate_hz);
  fn("pupil.base_mm", c.pupil.base_mm);
  fn("pupil.base_sd_mm", c.pupil.base_sd_mm);
  fn("pupil.oscillation_mm", c.pupil.oscillation_mm);
  fn("pupil.min_freq_hz", c.pupil.min_freq_hz);
  fn("pupil.max_freq_hz", c.pupil.max_freq_hz);
  fn("pupil.noise_mm", c.pupil.noise_mm);
  fn("pupil.blinks_per_s", c.pupil.blinks_per_s);
  fn("pupil.blink_min_s", c.pupil.blink_min_s);
  fn("pupil.blink_max_s", c.pupil.blink_max_s);
  fn("driving.rate_hz", c.driving.rate_hz);
  fn("driving.speed_mps", c.driving.speed_mps);
  fn("driving.lane_width_m", c.driving.lane_width_m);
  fn("driving.change_spacing_min_m", c.driving.change_spacing_min_m);
  fn("driving.change_spacing_max_m", c.driving.change_spacing_max_m);
  fn("driving.noise_ar", c.driving.noise_ar);
  fn("schedule.presentation_s", c.schedule.presentation_s);
  fn("schedule.pause_s", c.schedule.pause_s);
  fn("schedule.nback_target_fraction", c.schedule.nback_target_fraction);
  fn("schedule.search_target_fraction", c.schedule.search_target_fraction);
  fn("schedule.nback_rt_s_mean", c.schedule.nback_rt_s.mean);
  fn("schedule.nback_rt_s_sd", c.schedule.nback_rt_s.sd);
}

void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidArgument("generator config: " + what);
}

}  // namespace

void GeneratorConfig::validate() const {
  require(n_participants >= 1 && n_participants <= 999, "n_participants must be in [1, 999]");
  require(min_duration_s >= 120.0 && max_duration_s <= 160.0 && min_duration_s <= max_duration_s,
          "durations must lie within [120, 160] s");
  require(schedule.stimuli >= 1, "schedule.stimuli must be >= 1");
  const double trial = schedule.presentation_s + schedule.pause_s;
  require(schedule.presentation_s > 0.0 && schedule.pause_s >= 0.0, "bad stimulus timing");
  require(schedule.stimuli * trial <= min_duration_s, "stimulus schedule longer than the segment");
  require(schedule.nback_target_fraction > 0.0 && schedule.nback_target_fraction < 1.0,
          "nback_target_fraction must be in (0, 1)");
  require(schedule.search_target_fraction > 0.0 && schedule.search_target_fraction < 1.0,
          "search_target_fraction must be in (0, 1)");
  for (double s : {shares.hr, shares.rmssd, shares.drive})
    require(s >= 0.0 && s <= 1.0, "variance shares must be in [0, 1]");
  require(std::abs(heart_baseline_correlation) <= 1.0, "heart_baseline_correlation outside [-1, 1]");
  require(pupil.rate_hz > 0.0 && driving.rate_hz > 0.0, "sampling rates must be > 0");
  require(pupil.min_freq_hz > 0.0 && pupil.min_freq_hz <= pupil.max_freq_hz, "bad pupil frequency range");
  require(pupil.blink_min_s > 0.0 && pupil.blink_min_s <= pupil.blink_max_s && pupil.blink_max_s <= 0.5,
          "blinks must last between 0 and 0.5 s");
  require(pupil.blinks_per_s >= 0.0 && pupil.noise_mm >= 0.0 && pupil.base_sd_mm >= 0.0 &&
              pupil.oscillation_mm >= 0.0,
          "pupil amplitudes must be >= 0");
  require(pupil.base_mm - 4.0 * pupil.base_sd_mm - pupil.oscillation_mm > 0.5, "pupil diameter may turn non-positive");
  require(driving.speed_mps > 0.0 && driving.lane_width_m > 0.0, "bad driving geometry");
  require(driving.change_spacing_min_m >= kDefaultTransitionLengthM &&
              driving.change_spacing_min_m <= driving.change_spacing_max_m,
          "lane change spacing must be at least the transition length");
  require(driving.noise_ar >= 0.0 && driving.noise_ar < 1.0, "driving.noise_ar must be in [0, 1)");
  require(schedule.nback_rt_s.mean > 0.0 && schedule.nback_rt_s.sd >= 0.0, "bad n-back latency");
  for (const auto& row : targets)
    for (const auto& t : row) {
      for (const Moments* m : {&t.hr_bpm, &t.rmssd_ms, &t.lhipa_right, &t.lhipa_left, &t.drive_dev_m,
                               &t.reaction_time_s})
        require(m->sd >= 0.0, "all sds must be >= 0");
      require(t.hr_bpm.mean >= 40.0 && t.hr_bpm.mean <= 180.0, "HR mean outside [40, 180] bpm");
      require(t.rmssd_ms.mean > 0.0 && t.drive_dev_m.mean > 0.0, "RMSSD and deviation means must be > 0");
      require(t.rmssd_ms.mean < 60000.0 / t.hr_bpm.mean, "RMSSD target exceeds the mean RR interval");
      require(t.reaction_time_s.mean > 0.0 && t.reaction_time_s.mean < schedule.presentation_s + schedule.pause_s,
              "reaction time outside the response window");
      require(t.nback_rate >= 0.0 && t.nback_rate <= 1.0, "nback_rate must be in [0, 1]");
    }
}

GeneratorConfig without_level_effects(GeneratorConfig config) {
  for (auto& row : config.targets) {
    auto average = [&](auto member) {
      Moments m{};
      for (const auto& t : row) {
        m.mean += (t.*member).mean / 3.0;
        m.sd += (t.*member).sd / 3.0;
      }
      for (auto& t : row) t.*member = m;
    };
    average(&LevelTargets::hr_bpm);
    average(&LevelTargets::rmssd_ms);
    average(&LevelTargets::lhipa_right);
    average(&LevelTargets::lhipa_left);
    average(&LevelTargets::drive_dev_m);
    average(&LevelTargets::reaction_time_s);
    double rate = 0.0;
    for (const auto& t : row) rate += t.nback_rate / 3.0;
    for (auto& t : row) t.nback_rate = rate;
  }
  return config;
}

namespace {

double round_to(double v, double step) { return std::round(v / step) * step; }

struct LogMoments {
  double mu = 0.0;
  double sigma = 0.0;
};

LogMoments log_moments(const Moments& m) {
  const double s2 = std::log1p((m.sd * m.sd) / (m.mean * m.mean));
  return {std::log(m.mean) - s2 / 2.0, std::sqrt(s2)};
}

// Baseline sd: the share of the smallest per-condition sd, so every
// condition keeps a non-negative within-participant variance.
template <typename Get>
double baseline_sd(const GeneratorConfig& c, double share, Get get) {
  double smallest = INFINITY;
  for (const auto& row : c.targets)
    for (const auto& t : row) smallest = std::min(smallest, get(t));
  return std::sqrt(share) * smallest;
}

double within_sd(double total, double baseline) {
  return std::sqrt(std::max(0.0, total * total - baseline * baseline));
}

struct Baseline {
  double hr = 0.0;
  double log_rmssd = 0.0;
  double log_drive = 0.0;
  double pupil_mm = 0.0;
};

enum Channel : std::uint64_t { kTargets = 0, kCardiac, kPupil, kDriving, kEvents };

std::mt19937_64 segment_stream(const GeneratorConfig& c, std::size_t p, TaskKind task, LoadLevel lvl,
                               Channel channel) {
  return derived_stream(c.seed, Stream::Synth,
                        {static_cast<std::uint64_t>(p), task == TaskKind::NBack ? 0u : 1u,
                         static_cast<std::uint64_t>(level_code(lvl)), channel});
}

std::vector<RrSample> synth_rr(std::mt19937_64& rng, double duration, double hr, double rmssd) {
  // White RR jitter of sd s gives RMSSD ~ s * sqrt(2). The mean RR absorbs
  // Jensen's term so that the mean per-beat HR hits the target.
  std::normal_distribution<double> gauss;
  double mu = 60000.0 / hr;
  const double s = std::min(rmssd / std::numbers::sqrt2, 0.1 * mu);
  for (int i = 0; i < 20; ++i) mu = 60000.0 / hr * (1.0 + (s * s) / (mu * mu));
  std::vector<RrSample> out;
  double onset = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  for (;;) {
    const double rr = round_to(std::clamp(mu + s * gauss(rng), 320.0, 1900.0), 0.1);
    if (onset + rr / 1000.0 > duration) break;
    out.push_back({round_to(onset, 1e-4), rr});
    onset += rr / 1000.0;
  }
  return out;
}

struct Blink {
  double start = 0.0;
  double end = 0.0;
};

void synth_pupil(std::mt19937_64& rng, const PupilModel& m, double duration, double base_mm,
                 std::vector<PupilSample>& left, std::vector<PupilSample>& right) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss;
  const double freq = m.min_freq_hz + (m.max_freq_hz - m.min_freq_hz) * unit(rng);
  const double phase = 2.0 * std::numbers::pi * unit(rng);

  std::vector<Blink> blinks;
  if (m.blinks_per_s > 0.0) {
    std::exponential_distribution<double> wait(m.blinks_per_s);
    double t = 1.0 + wait(rng);
    while (t < duration - 1.0) {
      const double len = m.blink_min_s + (m.blink_max_s - m.blink_min_s) * unit(rng);
      blinks.push_back({t, t + len});
      t += len + wait(rng);
    }
  }

  const auto count = static_cast<std::size_t>(std::floor(duration * m.rate_hz + 1e-9)) + 1;
  left.reserve(count);
  right.reserve(count);
  std::size_t b = 0;
  for (std::size_t k = 0; k < count; ++k) {
    const double t = static_cast<double>(k) / m.rate_hz;
    while (b < blinks.size() && blinks[b].end < t) ++b;
    const bool blink = b < blinks.size() && t >= blinks[b].start;
    const double common = base_mm + m.oscillation_mm * std::sin(2.0 * std::numbers::pi * freq * t + phase);
    for (auto* eye : {&left, &right}) {
      double d = common + m.noise_mm * gauss(rng);
      double conf = 0.85 + 0.15 * unit(rng);
      if (blink) {
        d *= 0.5;
        conf = 0.3 * unit(rng);
      }
      eye->push_back({std::min(round_to(t, 1e-4), duration), round_to(d, 1e-4), round_to(conf, 0.01)});
    }
  }
}

std::vector<DrivingSample> synth_driving(std::mt19937_64& rng, const DrivingModel& m, double duration,
                                         double deviation) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss;
  const auto count = static_cast<std::size_t>(std::floor(duration * m.rate_hz + 1e-9)) + 1;
  std::vector<double> t(count);
  for (std::size_t k = 0; k < count; ++k) t[k] = std::min(round_to(static_cast<double>(k) / m.rate_hz, 1e-4), duration);

  // Lane plan on the three-lane road; a change takes effect at the first
  // sample past its planned position.
  std::vector<int> lane(count);
  std::vector<LaneChange> changes;
  const int initial = static_cast<int>(unit(rng) * 3.0);
  int current = initial;
  auto spacing = [&] {
    return m.change_spacing_min_m + (m.change_spacing_max_m - m.change_spacing_min_m) * unit(rng);
  };
  double next = 0.5 * spacing();
  for (std::size_t k = 0; k < count; ++k) {
    const double s = m.speed_mps * t[k];
    if (s >= next) {
      const int to = (current + 1 + static_cast<int>(unit(rng) * 2.0)) % 3;
      changes.push_back({s, current, to});
      current = to;
      next = s + spacing();
    }
    lane[k] = current;
  }
  const IdealPath path = build_ideal_path(changes, m.lane_width_m, kDefaultTransitionLengthM, initial);

  // AR(1) noise with unit marginal variance; E|N(0, sigma^2)| = sigma sqrt(2/pi).
  const double sigma = deviation * std::sqrt(std::numbers::pi / 2.0);
  const double innovation = std::sqrt(1.0 - m.noise_ar * m.noise_ar);
  double ar = gauss(rng);
  std::vector<DrivingSample> out(count);
  for (std::size_t k = 0; k < count; ++k) {
    if (k > 0) ar = m.noise_ar * ar + innovation * gauss(rng);
    out[k] = {t[k], round_to(path(m.speed_mps * t[k]) + sigma * ar, 1e-4), lane[k]};
  }
  return out;
}

std::vector<TaskEvent> synth_events(std::mt19937_64& rng, const TaskSchedule& sch, TaskKind task,
                                    LoadLevel lvl, const LevelTargets& target, double duration) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss;
  const double trial = sch.presentation_s + sch.pause_s;
  const int n = sch.stimuli;
  const double t0 = round_to(unit(rng) * (duration - n * trial), 1e-3);

  const int back = level_code(lvl) + 1;
  const int eligible = task == TaskKind::NBack ? std::max(0, n - back) : n;
  const double fraction = task == TaskKind::NBack ? sch.nback_target_fraction : sch.search_target_fraction;
  const int n_targets = std::min(eligible, static_cast<int>(std::lround(fraction * n)));
  std::vector<int> order(static_cast<std::size_t>(eligible));
  for (int i = 0; i < eligible; ++i) order[static_cast<std::size_t>(i)] = (task == TaskKind::NBack ? back : 0) + i;
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<bool> is_target(static_cast<std::size_t>(n), false);
  for (int i = 0; i < n_targets; ++i) is_target[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = true;

  // n-back: hits and false alarms split the expected shortfall 70/30 so the
  // expected (hits - false positives) / targets equals the target rate.
  const double miss = 1.0 - target.nback_rate;
  const double p_hit = 1.0 - 0.7 * miss;
  const double p_fa = n > n_targets ? 0.3 * miss * n_targets / (n - n_targets) : 0.0;
  const double seg_rt = std::clamp(target.reaction_time_s.mean, 0.3, trial - 0.1);

  std::vector<TaskEvent> events;
  std::vector<int> digits(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    const double onset = round_to(t0 + i * trial, 1e-3);
    std::optional<std::string> payload;
    bool respond = false;
    double latency = 0.0;
    if (task == TaskKind::NBack) {
      int digit = static_cast<int>(unit(rng) * 10.0);
      if (i >= back) {
        const int earlier = digits[ui - static_cast<std::size_t>(back)];
        if (is_target[ui]) digit = earlier;
        else if (digit == earlier) digit = (digit + 1 + static_cast<int>(unit(rng) * 9.0)) % 10;
      }
      digits[ui] = digit;
      payload = std::to_string(digit);
      respond = unit(rng) < (is_target[ui] ? p_hit : p_fa);
      latency = sch.nback_rt_s.mean + sch.nback_rt_s.sd * gauss(rng);
    } else {
      respond = unit(rng) < (is_target[ui] ? 0.95 : 0.05);
      latency = seg_rt + 0.3 * gauss(rng);
    }
    latency = std::clamp(latency, 0.2, trial - 0.1);
    events.push_back({onset, EventKind::StimulusOnset, payload});
    events.push_back({onset, is_target[ui] ? EventKind::TargetPresent : EventKind::TargetAbsent, std::nullopt});
    if (respond) events.push_back({round_to(onset + latency, 1e-3), EventKind::Response, std::nullopt});
  }
  return events;
}

std::string participant_id(std::size_t p) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "P%03zu", p + 1);
  return buf;
}

}  // namespace

Dataset generate_dataset(const GeneratorConfig& c, unsigned threads) {
  c.validate();
  const double b_hr = baseline_sd(c, c.shares.hr, [](const LevelTargets& t) { return t.hr_bpm.sd; });
  const double b_rmssd =
      baseline_sd(c, c.shares.rmssd, [](const LevelTargets& t) { return log_moments(t.rmssd_ms).sigma; });
  const double b_drive =
      baseline_sd(c, c.shares.drive, [](const LevelTargets& t) { return log_moments(t.drive_dev_m).sigma; });
  const double rho = c.heart_baseline_correlation;

  const auto n = static_cast<std::size_t>(c.n_participants);
  std::vector<std::vector<SessionSegment>> per_participant(n);
  parallel_for(n, threads, [&](std::size_t p) {
    auto rng = derived_stream(c.seed, Stream::Synth, {static_cast<std::uint64_t>(p)});
    std::normal_distribution<double> gauss;
    const double z_hr = gauss(rng);
    const double z_other = gauss(rng);
    Baseline base;
    base.hr = b_hr * z_hr;
    base.log_rmssd = b_rmssd * (rho * z_hr + std::sqrt(1.0 - rho * rho) * z_other);
    base.log_drive = b_drive * gauss(rng);
    base.pupil_mm = c.pupil.base_mm + c.pupil.base_sd_mm * gauss(rng);

    auto& out = per_participant[p];
    for (TaskKind task : kAllTasks)
      for (LoadLevel lvl : kAllLevels) {
        const LevelTargets& t = c.at(task, lvl);
        auto draw = segment_stream(c, p, task, lvl, kTargets);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        SessionSegment seg;
        seg.participant_id = participant_id(p);
        seg.task = task;
        seg.level = lvl;
        seg.duration_s = round_to(c.min_duration_s + (c.max_duration_s - c.min_duration_s) * unit(draw), 1e-3);

        const double hr = std::clamp(t.hr_bpm.mean + base.hr + within_sd(t.hr_bpm.sd, b_hr) * gauss(draw), 40.0, 180.0);
        const LogMoments lr = log_moments(t.rmssd_ms);
        const double rmssd = std::exp(lr.mu + base.log_rmssd + within_sd(lr.sigma, b_rmssd) * gauss(draw));
        const LogMoments ld = log_moments(t.drive_dev_m);
        const double deviation = std::exp(ld.mu + base.log_drive + within_sd(ld.sigma, b_drive) * gauss(draw));

        auto cardiac_rng = segment_stream(c, p, task, lvl, kCardiac);
        seg.rr_intervals = synth_rr(cardiac_rng, seg.duration_s, hr, rmssd);
        auto pupil_rng = segment_stream(c, p, task, lvl, kPupil);
        synth_pupil(pupil_rng, c.pupil, seg.duration_s, base.pupil_mm, seg.pupil_left, seg.pupil_right);
        auto driving_rng = segment_stream(c, p, task, lvl, kDriving);
        seg.driving = synth_driving(driving_rng, c.driving, seg.duration_s, deviation);
        auto event_rng = segment_stream(c, p, task, lvl, kEvents);
        seg.events = synth_events(event_rng, c.schedule, task, lvl, t, seg.duration_s);
        out.push_back(std::move(seg));
      }
  });

  std::vector<SessionSegment> all;
  all.reserve(n * 6);
  for (auto& segs : per_participant)
    for (auto& s : segs) all.push_back(std::move(s));
  return Dataset(std::move(all));
}

Dataset generate_null_dataset(const GeneratorConfig& config, unsigned threads) {
  return generate_dataset(without_level_effects(config), threads);
}

GeneratorConfig parse_generator_config(std::string_view text, GeneratorConfig base) {
  std::size_t pos = 0;
  int line_no = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto trim = [](std::string_view s) {
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
      return s;
    };
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = "generator config line " + std::to_string(line_no);
    if (eq == std::string_view::npos) throw InvalidArgument(where + ": expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));

    if (key == "n_participants" || key == "seed" || key == "schedule.stimuli") {
      std::uint64_t v = 0;
      auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
      if (ec != std::errc() || ptr != value.data() + value.size())
        throw InvalidArgument(where + ": '" + key + "' needs a non-negative integer");
      if (key == "seed") base.seed = v;
      else if (key == "n_participants") base.n_participants = static_cast<int>(std::min<std::uint64_t>(v, 100000));
      else base.schedule.stimuli = static_cast<int>(std::min<std::uint64_t>(v, 100000));
      continue;
    }
    bool found = false;
    for_each_field(base, [&](const std::string& name, double& field) {
      if (name != key) return;
      found = true;
      if (!detail::parse_number(value, field)) throw InvalidArgument(where + ": '" + key + "' needs a number");
    });
    if (!found) throw InvalidArgument(where + ": unknown key '" + key + "'");
  }
  base.validate();
  return base;
}

GeneratorConfig read_generator_config(const std::filesystem::path& path, GeneratorConfig base) {
  return parse_generator_config(detail::read_file(path), std::move(base));
}

std::string write_generator_config(const GeneratorConfig& config) {
  std::ostringstream out;
  out << "n_participants = " << config.n_participants << "\n";
  out << "seed = " << config.seed << "\n";
  out << "schedule.stimuli = " << config.schedule.stimuli << "\n";
  for_each_field(config, [&](const std::string& name, const double& v) {
    out << name << " = " << format_double(v) << "\n";
  });
  return out.str();
}

}  // namespace loadsense
