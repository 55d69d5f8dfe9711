#pragma once

#include <Eigen/Core>

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "loadsense/features.hpp"
#include "loadsense/types.hpp"

namespace loadsense {

/// The five measurement dimensions analysed per condition.
enum class Dimension { Hr, HrvRmssd, LhipaRight, LhipaLeft, Driving };

inline constexpr std::array<Dimension, 5> kAllDimensions{
    Dimension::Hr, Dimension::HrvRmssd, Dimension::LhipaRight, Dimension::LhipaLeft,
    Dimension::Driving};

std::string_view to_string(Dimension d);
/// Feature column that represents a dimension (Hr -> hr_mean, ...).
Feature feature_of(Dimension d);

/// 2 tasks x 3 levels; column = task * 3 + level.
inline constexpr std::size_t kConditionCount = 6;
std::size_t condition_index(TaskKind task, LoadLevel level);
std::string condition_label(std::size_t condition);

struct TestResult {
  double statistic = 0.0;
  double df = 0.0;
  double p_value = 1.0;
  std::size_t n = 0;
  bool degenerate = false;
};

struct MeanStd {
  std::optional<double> mean;
  std::optional<double> std;  ///< sample (n-1) std; empty when n < 2
  std::size_t n = 0;
};

/// Mean and sample std of the finite entries; NaN entries are ignored.
MeanStd mean_std(std::span<const double> values);

/// Pearson r with df = n - 2 and a two-tailed p from Student's t. Zero
/// variance in either argument sets `degenerate` (r = 0, p = 1).
TestResult pearson(std::span<const double> x, std::span<const double> y);

/// Paired t-test on x - y, df = n - 1, two-tailed.
TestResult paired_t(std::span<const double> x, std::span<const double> y);

/// Participants x 6 conditions for one dimension; NaN marks a missing value.
struct ConditionMatrix {
  Dimension dimension = Dimension::Hr;
  std::vector<std::string> participants;
  Eigen::MatrixXd values;
};

ConditionMatrix condition_matrix(const FeatureTable& table, Dimension dimension);

struct AlphaResult {
  double alpha = 0.0;
  std::size_t n_complete = 0;
  bool degenerate = false;
};

/// Cronbach's alpha over the columns of `items` (rows = participants) after
/// listwise deletion of incomplete rows. Requires k >= 2 and n >= 2.
AlphaResult cronbach_alpha(const Eigen::MatrixXd& items);

struct ReliabilityScreen {
  double threshold = 0.7;
  std::vector<std::pair<Dimension, AlphaResult>> alphas;
  std::vector<Dimension> retained;
  std::vector<Dimension> excluded;

  bool is_retained(Dimension d) const;
};

inline constexpr double kDefaultReliabilityThreshold = 0.7;

/// Retains a dimension iff its alpha is computable and >= threshold.
ReliabilityScreen reliability_screen(std::span<const ConditionMatrix> matrices,
                                     double threshold = kDefaultReliabilityThreshold);

/// Table-2 layout: one row per dimension, one (mean, std) cell per condition.
struct DescriptiveTable {
  std::vector<Dimension> rows;
  std::vector<std::array<MeanStd, kConditionCount>> cells;
};

DescriptiveTable descriptive_table(const FeatureTable& table);

/// Symmetric Pearson matrix over labelled columns; pairwise-complete rows.
struct CorrelationMatrix {
  std::vector<std::string> labels;
  Eigen::MatrixXd r;
  Eigen::MatrixXd p;
  Eigen::MatrixXi n;
};

/// "**" for p < .001, "*" for p < .05, "" otherwise.
std::string_view significance_stars(double p);

/// Columns are every (dimension, condition) pair of the given matrices.
CorrelationMatrix correlation_matrix(std::span<const ConditionMatrix> matrices);

/// Correlations between per-participant averages across conditions.
CorrelationMatrix averaged_correlation_matrix(std::span<const ConditionMatrix> matrices);

}  // namespace loadsense
