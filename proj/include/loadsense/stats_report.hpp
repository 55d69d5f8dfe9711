#pragma once

#include <string>
#include <vector>

#include "loadsense/stats.hpp"

namespace loadsense {

std::string render_descriptive_text(const DescriptiveTable& table);
std::string render_descriptive_csv(const DescriptiveTable& table);

/// Lower-triangular matrix with "*" (p < .05) and "**" (p < .001) marks.
std::string render_correlation_text(const CorrelationMatrix& m, const std::string& caption);
std::string render_correlation_csv(const CorrelationMatrix& m);

std::string render_reliability_text(const ReliabilityScreen& screen);

/// Paired comparison of task performance between adjacent load levels.
struct ManipulationCheck {
  TaskKind task = TaskKind::NBack;
  std::string measure;  ///< "performance_rate" or "reaction_time_s"
  LoadLevel first = LoadLevel::Easy;
  LoadLevel second = LoadLevel::Medium;
  MeanStd first_stats;
  MeanStd second_stats;
  TestResult test;
};

/// n-back performance rate and visual-search reaction time, easy vs medium and
/// medium vs hard, paired by participant (listwise per comparison).
std::vector<ManipulationCheck> manipulation_checks(const Dataset& dataset);

std::string render_manipulation_text(const std::vector<ManipulationCheck>& checks);

}  // namespace loadsense
