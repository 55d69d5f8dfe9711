#include <cstdio>
#include <map>
#include <sstream>

#include "csv.hpp"
#include "loadsense/dataset_io.hpp"
#include "loadsense/eval.hpp"

namespace loadsense {

namespace {

std::string pct(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", v);
  return buf;
}

std::string pad(const std::string& s, std::size_t width) {
  // "±" is two bytes but one column.
  std::size_t cols = 0;
  for (unsigned char ch : s) cols += (ch & 0xC0) != 0x80;
  return cols >= width ? s + " " : s + std::string(width - cols, ' ');
}

std::string chance_text(ClassScheme scheme) { return scheme == ClassScheme::Binary ? "50%" : "33.33%"; }

}  // namespace

std::string report_basename(TaskKind task, ClassScheme scheme) {
  return "report_" + std::string(to_string(task)) + "_" + std::string(to_string(scheme));
}

std::string render_report_text(const EvaluationReport& report) {
  std::ostringstream out;
  out << (report.task == TaskKind::NBack ? "N-back" : "Visual search") << " "
      << (report.scheme == ClassScheme::Binary ? "binary-class" : "three-class")
      << " average test accuracy and standard deviation (Mean%±Std). The random chance level is "
      << chance_text(report.scheme) << ".\n";
  out << "# format_version=" << kReportFormatVersion << " seed=" << report.seed << "\n";
  out << pad("", 10);
  for (FeatureSubset s : report.columns) out << pad(std::string(display_name(s)), 15);
  out << "\n";
  for (std::size_t m = 0; m < report.rows.size(); ++m) {
    out << pad(std::string(to_string(report.rows[m])), 10);
    for (const auto& cell : report.cells[m]) out << pad(pct(cell.mean_pct) + "±" + pct(cell.std_pct), 15);
    out << "\n";
  }
  return out.str();
}

std::string render_report_csv(const EvaluationReport& report) {
  std::ostringstream out;
  out << "# loadsense report format_version=" << kReportFormatVersion << " seed=" << report.seed
      << " task=" << to_string(report.task) << " scheme=" << to_string(report.scheme)
      << " chance_pct=" << format_double(report.chance_pct()) << "\n";
  out << "model";
  for (FeatureSubset s : report.columns) out << "," << key_name(s) << "_mean," << key_name(s) << "_std";
  out << "\n";
  for (std::size_t m = 0; m < report.rows.size(); ++m) {
    out << to_string(report.rows[m]);
    for (const auto& cell : report.cells[m])
      out << "," << format_double(cell.mean_pct) << "," << format_double(cell.std_pct);
    out << "\n";
  }
  return out.str();
}

EvaluationReport parse_report_csv(std::string_view text) {
  EvaluationReport report;
  report.rows.clear();
  report.columns.clear();
  bool header = false;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    if (line.empty()) continue;
    if (line.front() == '#') {
      for (auto token : detail::split(line, ' ')) {
        auto eq = token.find('=');
        if (eq == std::string_view::npos) continue;
        auto key = token.substr(0, eq);
        auto value = token.substr(eq + 1);
        if (key == "seed") {
          double v = 0;
          if (detail::parse_number(value, v)) report.seed = static_cast<std::uint64_t>(v);
        } else if (key == "task") {
          if (auto t = parse_task(value)) report.task = *t;
        } else if (key == "scheme") {
          if (auto s = parse_scheme(value)) report.scheme = *s;
        }
      }
      continue;
    }
    auto fields = detail::split(line, ',');
    if (!header) {
      if (fields.empty() || fields[0] != "model" || fields.size() % 2 != 1)
        throw DataError("report csv: malformed header");
      for (std::size_t i = 1; i < fields.size(); i += 2) {
        auto name = fields[i];
        if (name.size() < 5 || name.substr(name.size() - 5) != "_mean")
          throw DataError("report csv: unexpected column '" + std::string(name) + "'");
        auto subset = parse_subset(name.substr(0, name.size() - 5));
        if (!subset) throw DataError("report csv: unknown subset '" + std::string(name) + "'");
        report.columns.push_back(*subset);
      }
      header = true;
      continue;
    }
    if (fields.size() != 1 + 2 * report.columns.size()) throw DataError("report csv: wrong arity");
    std::optional<ModelKind> kind;
    for (ModelKind k : kReportModels)
      if (fields[0] == to_string(k)) kind = k;
    if (!kind) throw DataError("report csv: unknown model '" + std::string(fields[0]) + "'");
    report.rows.push_back(*kind);
    std::vector<ReportCell> cells(report.columns.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (!detail::parse_number(fields[1 + 2 * c], cells[c].mean_pct) ||
          !detail::parse_number(fields[2 + 2 * c], cells[c].std_pct))
        throw DataError("report csv: non-numeric cell");
    }
    report.cells.push_back(std::move(cells));
  }
  if (!header) throw DataError("report csv: missing header");
  return report;
}

}  // namespace loadsense
