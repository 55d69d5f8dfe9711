#pragma once

#include <optional>
#include <span>

#include "loadsense/types.hpp"

namespace loadsense {

/// Responses are matched to the stimulus whose window contains them: from its
/// onset to the next onset, and at most this long after the final onset
/// (2000 ms presentation + 1000 ms pause).
inline constexpr double kStimulusWindowS = 3.0;

struct NBackScore {
  int targets = 0;
  int hits = 0;
  int false_positives = 0;
  double rate = 0.0;  ///< (hits - false_positives) / targets
};

/// Throws DataError when the log contains no target trials.
NBackScore nback_rate(std::span<const TaskEvent> events);

struct VisualSearchScore {
  int stimuli = 0;
  int responded = 0;
  std::optional<double> mean_rt_s;  ///< empty when nothing was answered
  double accuracy = 0.0;            ///< correct presses + correct withholds, over stimuli
};

/// Throws DataError when the log contains no stimulus onsets.
VisualSearchScore visual_search_perf(std::span<const TaskEvent> events);

}  // namespace loadsense
