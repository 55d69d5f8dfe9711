#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "loadsense/features.hpp"
#include "loadsense/rng.hpp"
#include "loadsense/selection.hpp"

namespace loadsense {

/// Participant-level nested split: per outer fold, disjoint test, validation
/// and training participant sets.
struct Fold {
  std::vector<std::string> test;
  std::vector<std::string> validation;
  std::vector<std::string> train;
};

struct SplitPlan {
  std::uint64_t seed = kDefaultSeed;
  std::vector<Fold> folds;
};

/// Shuffles the (sorted) ids with the seed; fold i tests the participants at
/// shuffled positions p with p % k == i. Of the rest, the first ceil(m/3)
/// form the validation set and the others the training set.
SplitPlan make_split_plan(std::vector<std::string> participant_ids, int k = 5,
                          std::uint64_t seed = kDefaultSeed);

enum class FeatureSubset { All, EyeDrive, HeartEye, HeartDrive, HeartAlone };

inline constexpr std::array<FeatureSubset, 5> kAllSubsets{
    FeatureSubset::All, FeatureSubset::EyeDrive, FeatureSubset::HeartEye,
    FeatureSubset::HeartDrive, FeatureSubset::HeartAlone};

/// Column title as printed in reports ("Heart & Eye").
std::string_view display_name(FeatureSubset s);
/// CLI / CSV key ("heart_eye").
std::string_view key_name(FeatureSubset s);
std::optional<FeatureSubset> parse_subset(std::string_view key);
std::vector<Feature> subset_features(FeatureSubset s);

enum class ClassScheme { Multi, Binary };

std::string_view to_string(ClassScheme s);
std::optional<ClassScheme> parse_scheme(std::string_view text);

/// Model rows of a report, in order.
inline constexpr std::array<ModelKind, 4> kReportModels{ModelKind::Lda, ModelKind::Knn,
                                                        ModelKind::AdaBoost, ModelKind::Ensemble};

struct ReportCell {
  std::vector<double> fold_accuracy;  ///< fraction in [0, 1], one per outer fold
  std::vector<std::string> chosen;    ///< selected configuration per fold
  double mean_pct = 0.0;
  double std_pct = 0.0;  ///< sample std (n-1) over folds
};

struct EvaluationReport {
  TaskKind task = TaskKind::NBack;
  ClassScheme scheme = ClassScheme::Multi;
  std::uint64_t seed = kDefaultSeed;
  std::vector<ModelKind> rows{kReportModels.begin(), kReportModels.end()};
  std::vector<FeatureSubset> columns{kAllSubsets.begin(), kAllSubsets.end()};
  /// cells[row][column]
  std::vector<std::vector<ReportCell>> cells;

  double chance_pct() const { return scheme == ClassScheme::Binary ? 50.0 : 100.0 / 3.0; }
};

struct NestedCvOptions {
  std::vector<FeatureSubset> subsets{kAllSubsets.begin(), kAllSubsets.end()};
  ModelGrid grid;
  int ensemble_max_size = 10;
  unsigned threads = 1;
};

/// Rows of `table` used for a task and class scheme (binary keeps easy and
/// medium only), as (row index, label) pairs sorted by participant and level.
std::vector<std::pair<std::size_t, int>> select_rows(const FeatureTable& table, TaskKind task,
                                                     ClassScheme scheme);

/// For every outer fold and feature subset: grid-search all configurations on
/// inner train/validation, take each model kind's best configuration and a
/// greedy ensemble over all candidates, and score them on the fold's test
/// participants. Throws DataError when a fold has no test rows.
EvaluationReport run_nested_cv(const FeatureTable& table, TaskKind task, ClassScheme scheme,
                               const SplitPlan& plan, const NestedCvOptions& options = {});

inline constexpr int kReportFormatVersion = 1;

/// Aligned text table with a caption naming the chance level.
std::string render_report_text(const EvaluationReport& report);
/// model,<subset>_mean,<subset>_std,... preceded by a '#' provenance line.
std::string render_report_csv(const EvaluationReport& report);
/// Reads render_report_csv output back (mean/std per cell; fold detail is not stored).
EvaluationReport parse_report_csv(std::string_view text);

std::string report_basename(TaskKind task, ClassScheme scheme);

}  // namespace loadsense
