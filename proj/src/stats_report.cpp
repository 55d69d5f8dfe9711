#include "loadsense/stats_report.hpp"

#include <cstdio>
#include <map>
#include <sstream>

#include "loadsense/dataset_io.hpp"
#include "loadsense/task_performance.hpp"

namespace loadsense {

namespace {

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

std::string cell_text(const MeanStd& c) {
  if (!c.mean) return "NA";
  return fixed(*c.mean, 2) + "±" + (c.std ? fixed(*c.std, 2) : std::string("NA"));
}

}  // namespace

std::string render_descriptive_text(const DescriptiveTable& table) {
  std::ostringstream out;
  out << "Descriptive statistics (mean±std) per condition\n";
  out << pad("", 14);
  for (std::size_t c = 0; c < kConditionCount; ++c) out << pad(condition_label(c), 22);
  out << "\n";
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    out << pad(std::string(to_string(table.rows[r])), 14);
    for (const auto& cell : table.cells[r]) out << pad(cell_text(cell), 22);
    out << "\n";
  }
  return out.str();
}

std::string render_descriptive_csv(const DescriptiveTable& table) {
  std::ostringstream out;
  out << "dimension,condition,n,mean,std\n";
  for (std::size_t r = 0; r < table.rows.size(); ++r)
    for (std::size_t c = 0; c < kConditionCount; ++c) {
      const auto& cell = table.cells[r][c];
      out << to_string(table.rows[r]) << "," << condition_label(c) << "," << cell.n << ","
          << (cell.mean ? format_double(*cell.mean) : "NA") << ","
          << (cell.std ? format_double(*cell.std) : "NA") << "\n";
    }
  return out.str();
}

std::string render_correlation_text(const CorrelationMatrix& m, const std::string& caption) {
  std::ostringstream out;
  out << caption << " (*) p<.05, (**) p<.001\n";
  std::size_t label_width = 8;
  for (const auto& l : m.labels) label_width = std::max(label_width, l.size() + 2);
  for (std::size_t i = 0; i < m.labels.size(); ++i) {
    out << pad(m.labels[i], label_width);
    for (std::size_t j = 0; j <= i; ++j) {
      const auto ii = static_cast<Eigen::Index>(i);
      const auto jj = static_cast<Eigen::Index>(j);
      std::string cell;
      if (i == j)
        cell = "1";
      else if (std::isnan(m.r(ii, jj)))
        cell = "NA";
      else
        cell = fixed(m.r(ii, jj), 3) + std::string(significance_stars(m.p(ii, jj)));
      out << pad(cell, 10);
    }
    out << "\n";
  }
  return out.str();
}

std::string render_correlation_csv(const CorrelationMatrix& m) {
  std::ostringstream out;
  out << "row,column,r,p,n,stars\n";
  for (std::size_t i = 0; i < m.labels.size(); ++i)
    for (std::size_t j = 0; j < m.labels.size(); ++j) {
      const auto ii = static_cast<Eigen::Index>(i);
      const auto jj = static_cast<Eigen::Index>(j);
      const bool nan = std::isnan(m.r(ii, jj));
      out << m.labels[i] << "," << m.labels[j] << "," << (nan ? "NA" : format_double(m.r(ii, jj)))
          << "," << (nan ? "NA" : format_double(m.p(ii, jj))) << "," << m.n(ii, jj) << ","
          << (nan || i == j ? "" : std::string(significance_stars(m.p(ii, jj)))) << "\n";
    }
  return out.str();
}

std::string render_reliability_text(const ReliabilityScreen& screen) {
  std::ostringstream out;
  out << "Cronbach's alpha over the six conditions (threshold " << fixed(screen.threshold, 2) << ")\n";
  for (const auto& [dim, a] : screen.alphas) {
    out << pad(std::string(to_string(dim)), 14) << "alpha="
        << (a.degenerate ? std::string("NA") : fixed(a.alpha, 3)) << "  n=" << a.n_complete << "  "
        << (screen.is_retained(dim) ? "retained" : "excluded") << "\n";
  }
  return out.str();
}

std::vector<ManipulationCheck> manipulation_checks(const Dataset& dataset) {
  // participant -> level -> measure
  std::map<TaskKind, std::map<std::string, std::map<LoadLevel, double>>> measures;
  for (const auto& seg : dataset.segments()) {
    try {
      if (seg.task == TaskKind::NBack) {
        measures[seg.task][seg.participant_id][seg.level] = nback_rate(seg.events).rate;
      } else {
        const auto vs = visual_search_perf(seg.events);
        if (vs.mean_rt_s) measures[seg.task][seg.participant_id][seg.level] = *vs.mean_rt_s;
      }
    } catch (const DataError&) {
      // No usable events for this segment; it drops out of the paired tests.
    }
  }

  std::vector<ManipulationCheck> checks;
  for (TaskKind task : kAllTasks) {
    for (auto [a, b] : {std::pair{LoadLevel::Easy, LoadLevel::Medium},
                        std::pair{LoadLevel::Medium, LoadLevel::Hard}}) {
      ManipulationCheck check;
      check.task = task;
      check.measure = task == TaskKind::NBack ? "performance_rate" : "reaction_time_s";
      check.first = a;
      check.second = b;
      std::vector<double> x, y;
      for (const auto& [pid, by_level] : measures[task]) {
        auto ia = by_level.find(a);
        auto ib = by_level.find(b);
        if (ia == by_level.end() || ib == by_level.end()) continue;
        x.push_back(ia->second);
        y.push_back(ib->second);
      }
      check.first_stats = mean_std(x);
      check.second_stats = mean_std(y);
      if (x.size() >= 2) {
        check.test = paired_t(x, y);
      } else {
        check.test.degenerate = true;
        check.test.n = x.size();
      }
      checks.push_back(check);
    }
  }
  return checks;
}

std::string render_manipulation_text(const std::vector<ManipulationCheck>& checks) {
  std::ostringstream out;
  out << "Manipulation checks (paired t-tests)\n";
  for (const auto& c : checks) {
    out << pad(std::string(to_string(c.task)), 15) << pad(c.measure, 18)
        << pad(std::string(to_string(c.first)) + " vs " + std::string(to_string(c.second)), 18);
    out << "M=" << (c.first_stats.mean ? fixed(*c.first_stats.mean, 2) : "NA") << " vs "
        << (c.second_stats.mean ? fixed(*c.second_stats.mean, 2) : "NA");
    if (c.test.n >= 2)
      out << "  t(" << static_cast<int>(c.test.df) << ")=" << fixed(c.test.statistic, 2)
          << "  p=" << fixed(c.test.p_value, 4);
    else
      out << "  t=NA";
    out << "\n";
  }
  return out.str();
}

}  // namespace loadsense
