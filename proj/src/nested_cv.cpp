#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

#include "loadsense/eval.hpp"
#include "loadsense/parallel.hpp"

namespace loadsense {

std::vector<std::pair<std::size_t, int>> select_rows(const FeatureTable& table, TaskKind task,
                                                     ClassScheme scheme) {
  std::vector<std::pair<std::size_t, int>> rows;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto& r = table[i];
    if (r.task != task) continue;
    if (scheme == ClassScheme::Binary && r.level == LoadLevel::Hard) continue;
    rows.emplace_back(i, level_code(r.level));
  }
  // canonical order so results do not depend on how the table was assembled
  std::stable_sort(rows.begin(), rows.end(), [&](const auto& a, const auto& b) {
    const auto& ra = table[a.first];
    const auto& rb = table[b.first];
    return std::tie(ra.participant, a.second) < std::tie(rb.participant, b.second);
  });
  return rows;
}

namespace {

struct Block {
  Eigen::MatrixXd x;
  Labels y;
};

Block gather(const FeatureTable& table, const std::vector<std::pair<std::size_t, int>>& rows,
             const std::set<std::string>& participants, const std::vector<Feature>& columns) {
  Block b;
  std::vector<std::pair<std::size_t, int>> chosen;
  for (const auto& r : rows)
    if (participants.count(table[r.first].participant)) chosen.push_back(r);
  b.x.resize(static_cast<Eigen::Index>(chosen.size()), static_cast<Eigen::Index>(columns.size()));
  for (std::size_t i = 0; i < chosen.size(); ++i) {
    const auto& fv = table[chosen[i].first].features;
    for (std::size_t c = 0; c < columns.size(); ++c)
      b.x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) =
          fv.is_missing(columns[c]) ? std::nan("") : fv[columns[c]];
    b.y.push_back(chosen[i].second);
  }
  return b;
}

struct CellOutcome {
  // Indexed like kReportModels.
  std::array<double, kReportModels.size()> accuracy{};
  std::array<std::string, kReportModels.size()> chosen;
};

}  // namespace

EvaluationReport run_nested_cv(const FeatureTable& table, TaskKind task, ClassScheme scheme,
                               const SplitPlan& plan, const NestedCvOptions& options) {
  if (plan.folds.empty()) throw InvalidArgument("run_nested_cv: empty split plan");
  if (options.subsets.empty()) throw InvalidArgument("run_nested_cv: no feature subsets");
  const auto rows = select_rows(table, task, scheme);

  std::set<std::string> planned;
  for (const auto& f : plan.folds) {
    planned.insert(f.test.begin(), f.test.end());
    planned.insert(f.validation.begin(), f.validation.end());
    planned.insert(f.train.begin(), f.train.end());
  }
  for (const auto& r : rows)
    if (!planned.count(table[r.first].participant))
      throw InvalidArgument("run_nested_cv: participant " + table[r.first].participant +
                            " is not covered by the split plan");

  const std::size_t n_folds = plan.folds.size();
  const std::size_t n_subsets = options.subsets.size();
  const auto configs = options.grid.configs();
  std::vector<CellOutcome> outcomes(n_folds * n_subsets);

  parallel_for(outcomes.size(), options.threads, [&](std::size_t job) {
    const std::size_t fi = job / n_subsets;
    const FeatureSubset subset = options.subsets[job % n_subsets];
    const Fold& fold = plan.folds[fi];
    const auto columns = subset_features(subset);
    const Block train = gather(table, rows, {fold.train.begin(), fold.train.end()}, columns);
    const Block val = gather(table, rows, {fold.validation.begin(), fold.validation.end()}, columns);
    const Block test = gather(table, rows, {fold.test.begin(), fold.test.end()}, columns);
    if (test.y.empty())
      throw DataError("outer fold " + std::to_string(fi + 1) + " has no test rows for task " +
                      std::string(to_string(task)));

    const auto ranked = grid_search(train.x, train.y, val.x, val.y, configs, 1);
    if (ranked.empty())
      throw DataError("outer fold " + std::to_string(fi + 1) + ": no configuration could be trained");

    CellOutcome& out = outcomes[job];
    for (std::size_t m = 0; m < kReportModels.size(); ++m) {
      const ModelKind kind = kReportModels[m];
      if (kind == ModelKind::Ensemble) {
        const auto ens = greedy_ensemble(ranked, val.y, options.ensemble_max_size);
        out.accuracy[m] = accuracy(ens.model.predict(test.x), test.y);
        out.chosen[m] = ens.model.describe();
        continue;
      }
      auto it = std::find_if(ranked.begin(), ranked.end(),
                             [&](const Candidate& c) { return c.config.kind == kind; });
      if (it == ranked.end()) {
        out.accuracy[m] = std::nan("");
        out.chosen[m] = "none";
        continue;
      }
      out.accuracy[m] = accuracy(it->model.predict(test.x), test.y);
      out.chosen[m] = it->config.label();
    }
  });

  EvaluationReport report;
  report.task = task;
  report.scheme = scheme;
  report.seed = plan.seed;
  report.columns = options.subsets;
  report.cells.assign(kReportModels.size(), std::vector<ReportCell>(n_subsets));
  for (std::size_t m = 0; m < kReportModels.size(); ++m)
    for (std::size_t s = 0; s < n_subsets; ++s) {
      ReportCell& cell = report.cells[m][s];
      for (std::size_t fi = 0; fi < n_folds; ++fi) {
        const auto& o = outcomes[fi * n_subsets + s];
        cell.fold_accuracy.push_back(o.accuracy[m]);
        cell.chosen.push_back(o.chosen[m]);
      }
      double sum = 0.0;
      for (double a : cell.fold_accuracy) sum += a;
      const double n = static_cast<double>(cell.fold_accuracy.size());
      const double mean = sum / n;
      double ss = 0.0;
      for (double a : cell.fold_accuracy) ss += (a - mean) * (a - mean);
      cell.mean_pct = 100.0 * mean;
      cell.std_pct = n > 1 ? 100.0 * std::sqrt(ss / (n - 1.0)) : 0.0;
    }
  return report;
}

}  // namespace loadsense
