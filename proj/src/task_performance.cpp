#include "loadsense/task_performance.hpp"

#include <vector>

namespace loadsense {

namespace {

struct Trial {
  double onset = 0.0;
  bool target = false;
  std::optional<double> first_response;
};

// Events are in time order; markers and responses belong to the latest onset.
std::vector<Trial> collect_trials(std::span<const TaskEvent> events) {
  std::vector<Trial> trials;
  for (const auto& e : events) {
    switch (e.kind) {
      case EventKind::StimulusOnset:
        trials.push_back({e.t_s, false, std::nullopt});
        break;
      case EventKind::TargetPresent:
        if (!trials.empty()) trials.back().target = true;
        break;
      case EventKind::TargetAbsent:
        if (!trials.empty()) trials.back().target = false;
        break;
      case EventKind::Response:
        if (trials.empty()) break;
        if (e.t_s - trials.back().onset > kStimulusWindowS) break;
        if (!trials.back().first_response) trials.back().first_response = e.t_s;
        break;
    }
  }
  return trials;
}

}  // namespace

NBackScore nback_rate(std::span<const TaskEvent> events) {
  NBackScore s;
  for (const auto& t : collect_trials(events)) {
    if (t.target) {
      ++s.targets;
      if (t.first_response) ++s.hits;
    } else if (t.first_response) {
      ++s.false_positives;
    }
  }
  if (s.targets == 0) throw DataError("n-back rate undefined: no target trials");
  s.rate = static_cast<double>(s.hits - s.false_positives) / static_cast<double>(s.targets);
  return s;
}

VisualSearchScore visual_search_perf(std::span<const TaskEvent> events) {
  const auto trials = collect_trials(events);
  if (trials.empty()) throw DataError("visual search performance undefined: no stimuli");
  VisualSearchScore s;
  s.stimuli = static_cast<int>(trials.size());
  double rt_sum = 0.0;
  int correct = 0;
  for (const auto& t : trials) {
    if (t.first_response) {
      ++s.responded;
      rt_sum += *t.first_response - t.onset;
    }
    if (t.target == t.first_response.has_value()) ++correct;
  }
  if (s.responded > 0) s.mean_rt_s = rt_sum / s.responded;
  s.accuracy = static_cast<double>(correct) / static_cast<double>(s.stimuli);
  return s;
}

}  // namespace loadsense
