#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "loadsense/rng.hpp"
#include "loadsense/types.hpp"

namespace loadsense {

struct Moments {
  double mean = 0.0;
  double sd = 0.0;
};

/// Per (task, level) targets. Pooled across participants.
struct LevelTargets {
  Moments hr_bpm;
  Moments rmssd_ms;
  Moments lhipa_right;  ///< reference only; see PupilModel
  Moments lhipa_left;
  Moments drive_dev_m;
  Moments reaction_time_s;  ///< visual search
  double nback_rate = 1.0;  ///< expected (hits - false positives) / targets
};

/// Fraction of each dimension's variance carried by a per-participant
/// baseline shared over all six conditions. The rest is per-segment noise.
struct VarianceShares {
  double hr = 0.89;
  double rmssd = 0.89;
  double drive = 0.076;
};

/// Slow oscillation plus white noise, with short blinks. With these
/// amplitudes LHIPA sits near 2.4 per second regardless of level; the model
/// has no handle on the LHIPA targets.
struct PupilModel {
  double rate_hz = 120.0;
  double base_mm = 4.0;
  double base_sd_mm = 0.5;  ///< between participants
  double oscillation_mm = 0.2;
  double min_freq_hz = 0.1;
  double max_freq_hz = 0.5;
  double noise_mm = 0.03;
  double blinks_per_s = 0.25;
  double blink_min_s = 0.1;
  double blink_max_s = 0.3;
};

struct DrivingModel {
  double rate_hz = 33.0;
  double speed_mps = 60.0 / 3.6;
  double lane_width_m = 3.5;
  double change_spacing_min_m = 120.0;
  double change_spacing_max_m = 180.0;
  /// Lag-one autocorrelation of the lateral noise.
  double noise_ar = 0.8;
};

struct TaskSchedule {
  int stimuli = 40;
  double presentation_s = 2.0;
  double pause_s = 1.0;
  double nback_target_fraction = 0.25;
  double search_target_fraction = 0.5;
  /// n-back response latency.
  Moments nback_rt_s{0.6, 0.15};
};

struct GeneratorConfig {
  int n_participants = 45;
  std::uint64_t seed = kDefaultSeed;
  /// targets[task][level]
  std::array<std::array<LevelTargets, 3>, 2> targets;
  VarianceShares shares;
  /// Correlation of the HR and log-RMSSD participant baselines.
  double heart_baseline_correlation = -0.53;
  double min_duration_s = 120.0;
  double max_duration_s = 160.0;
  PupilModel pupil;
  DrivingModel driving;
  TaskSchedule schedule;

  GeneratorConfig();

  LevelTargets& at(TaskKind task, LoadLevel level) {
    return targets[task == TaskKind::NBack ? 0 : 1][static_cast<std::size_t>(level_code(level))];
  }
  const LevelTargets& at(TaskKind task, LoadLevel level) const {
    return targets[task == TaskKind::NBack ? 0 : 1][static_cast<std::size_t>(level_code(level))];
  }

  /// Throws InvalidArgument on negative sds, durations outside [120, 160],
  /// or infeasible heart targets (RMSSD at least the mean RR interval).
  void validate() const;
};

/// Same config with every level of a task replaced by the task's level
/// average, so labels carry no signal.
GeneratorConfig without_level_effects(GeneratorConfig config);

Dataset generate_dataset(const GeneratorConfig& config, unsigned threads = 1);
Dataset generate_null_dataset(const GeneratorConfig& config, unsigned threads = 1);

/// Flat `key = value` lines; '#' starts a comment. Keys are those written by
/// write_generator_config. Unknown keys throw InvalidArgument.
GeneratorConfig parse_generator_config(std::string_view text, GeneratorConfig base = {});
GeneratorConfig read_generator_config(const std::filesystem::path& path, GeneratorConfig base = {});
std::string write_generator_config(const GeneratorConfig& config);

}  // namespace loadsense
