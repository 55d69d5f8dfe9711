#include "loadsense/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "loadsense/distributions.hpp"

namespace loadsense {

std::string_view to_string(Dimension d) {
  switch (d) {
    case Dimension::Hr: return "HR";
    case Dimension::HrvRmssd: return "HRV-RMSSD";
    case Dimension::LhipaRight: return "LHIPA right";
    case Dimension::LhipaLeft: return "LHIPA left";
    case Dimension::Driving: return "Driving";
  }
  return "?";
}

Feature feature_of(Dimension d) {
  switch (d) {
    case Dimension::Hr: return Feature::HrMean;
    case Dimension::HrvRmssd: return Feature::HrvRmssd;
    case Dimension::LhipaRight: return Feature::LhipaRight;
    case Dimension::LhipaLeft: return Feature::LhipaLeft;
    case Dimension::Driving: return Feature::DriveAvgDev;
  }
  return Feature::HrMean;
}

std::size_t condition_index(TaskKind task, LoadLevel level) {
  return (task == TaskKind::NBack ? 0 : 3) + static_cast<std::size_t>(level_code(level));
}

std::string condition_label(std::size_t condition) {
  const TaskKind task = condition < 3 ? TaskKind::NBack : TaskKind::VisualSearch;
  return std::string(to_string(task)) + "_" +
         std::string(to_string(level_from_code(static_cast<int>(condition % 3))));
}

MeanStd mean_std(std::span<const double> values) {
  MeanStd out;
  double sum = 0.0;
  for (double v : values)
    if (std::isfinite(v)) {
      sum += v;
      ++out.n;
    }
  if (out.n == 0) return out;
  const double mean = sum / static_cast<double>(out.n);
  out.mean = mean;
  if (out.n >= 2) {
    double ss = 0.0;
    for (double v : values)
      if (std::isfinite(v)) ss += (v - mean) * (v - mean);
    out.std = std::sqrt(ss / static_cast<double>(out.n - 1));
  }
  return out;
}

TestResult pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InvalidArgument("pearson: samples differ in length");
  if (x.size() < 3) throw InvalidArgument("pearson: need at least 3 pairs");
  const auto n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  TestResult res;
  res.n = x.size();
  res.df = n - 2.0;
  if (sxx == 0.0 || syy == 0.0) {
    res.degenerate = true;
    res.statistic = 0.0;
    res.p_value = 1.0;
    return res;
  }
  const double r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  res.statistic = r;
  if (std::abs(r) == 1.0) {
    res.p_value = 0.0;
  } else {
    const double t = r * std::sqrt(res.df / (1.0 - r * r));
    res.p_value = student_t_two_tailed(t, res.df);
  }
  return res;
}

TestResult paired_t(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InvalidArgument("paired_t: samples differ in length");
  if (x.size() < 2) throw InvalidArgument("paired_t: need at least 2 pairs");
  const auto n = static_cast<double>(x.size());
  std::vector<double> d(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) d[i] = x[i] - y[i];
  const double mean = std::accumulate(d.begin(), d.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : d) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / (n - 1.0));

  TestResult res;
  res.n = x.size();
  res.df = n - 1.0;
  if (sd == 0.0) {
    res.degenerate = true;
    if (mean == 0.0) {
      res.statistic = 0.0;
      res.p_value = 1.0;
    } else {
      res.statistic = mean > 0 ? INFINITY : -INFINITY;
      res.p_value = 0.0;
    }
    return res;
  }
  res.statistic = mean / (sd / std::sqrt(n));
  res.p_value = student_t_two_tailed(res.statistic, res.df);
  return res;
}

ConditionMatrix condition_matrix(const FeatureTable& table, Dimension dimension) {
  ConditionMatrix m;
  m.dimension = dimension;
  std::map<std::string, std::size_t> row_of;
  for (const auto& row : table)
    if (row_of.emplace(row.participant, 0).second) m.participants.push_back(row.participant);
  std::sort(m.participants.begin(), m.participants.end());
  for (std::size_t i = 0; i < m.participants.size(); ++i) row_of[m.participants[i]] = i;

  const auto rows = static_cast<Eigen::Index>(m.participants.size());
  m.values = Eigen::MatrixXd::Constant(rows, kConditionCount, std::nan(""));
  const Feature f = feature_of(dimension);
  for (const auto& row : table) {
    if (row.features.is_missing(f)) continue;
    m.values(static_cast<Eigen::Index>(row_of[row.participant]),
             static_cast<Eigen::Index>(condition_index(row.task, row.level))) = row.features[f];
  }
  return m;
}

namespace {

double sample_variance(const Eigen::VectorXd& v) {
  const double mean = v.mean();
  return (v.array() - mean).square().sum() / static_cast<double>(v.size() - 1);
}

}  // namespace

AlphaResult cronbach_alpha(const Eigen::MatrixXd& items) {
  const Eigen::Index k = items.cols();
  if (k < 2) throw InvalidArgument("cronbach_alpha: need at least 2 items");
  std::vector<Eigen::Index> complete;
  for (Eigen::Index r = 0; r < items.rows(); ++r)
    if (items.row(r).array().isFinite().all()) complete.push_back(r);
  AlphaResult res;
  res.n_complete = complete.size();
  if (complete.size() < 2) throw InvalidArgument("cronbach_alpha: need at least 2 complete rows");

  Eigen::MatrixXd data(static_cast<Eigen::Index>(complete.size()), k);
  for (std::size_t i = 0; i < complete.size(); ++i) data.row(static_cast<Eigen::Index>(i)) = items.row(complete[i]);

  double item_var = 0.0;
  for (Eigen::Index c = 0; c < k; ++c) item_var += sample_variance(data.col(c));
  const double total_var = sample_variance(data.rowwise().sum());
  if (total_var == 0.0) {
    res.degenerate = true;
    res.alpha = std::nan("");
    return res;
  }
  const double kd = static_cast<double>(k);
  res.alpha = kd / (kd - 1.0) * (1.0 - item_var / total_var);
  return res;
}

bool ReliabilityScreen::is_retained(Dimension d) const {
  return std::find(retained.begin(), retained.end(), d) != retained.end();
}

ReliabilityScreen reliability_screen(std::span<const ConditionMatrix> matrices, double threshold) {
  ReliabilityScreen screen;
  screen.threshold = threshold;
  for (const auto& m : matrices) {
    AlphaResult a;
    try {
      a = cronbach_alpha(m.values);
    } catch (const InvalidArgument&) {
      a.degenerate = true;
      a.alpha = std::nan("");
    }
    screen.alphas.emplace_back(m.dimension, a);
    if (!a.degenerate && a.alpha >= threshold)
      screen.retained.push_back(m.dimension);
    else
      screen.excluded.push_back(m.dimension);
  }
  return screen;
}

DescriptiveTable descriptive_table(const FeatureTable& table) {
  DescriptiveTable out;
  for (Dimension d : kAllDimensions) {
    std::array<std::vector<double>, kConditionCount> cols;
    const Feature f = feature_of(d);
    for (const auto& row : table)
      if (!row.features.is_missing(f)) cols[condition_index(row.task, row.level)].push_back(row.features[f]);
    std::array<MeanStd, kConditionCount> cells;
    for (std::size_t c = 0; c < kConditionCount; ++c) cells[c] = mean_std(cols[c]);
    out.rows.push_back(d);
    out.cells.push_back(cells);
  }
  return out;
}

std::string_view significance_stars(double p) {
  if (p < 0.001) return "**";
  if (p < 0.05) return "*";
  return "";
}

namespace {

CorrelationMatrix correlate_columns(std::vector<std::string> labels, const Eigen::MatrixXd& data) {
  const Eigen::Index k = data.cols();
  CorrelationMatrix out;
  out.labels = std::move(labels);
  out.r = Eigen::MatrixXd::Constant(k, k, std::nan(""));
  out.p = Eigen::MatrixXd::Constant(k, k, std::nan(""));
  out.n = Eigen::MatrixXi::Zero(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    out.r(i, i) = 1.0;
    out.p(i, i) = 0.0;
    out.n(i, i) = static_cast<int>(data.col(i).array().isFinite().count());
    for (Eigen::Index j = 0; j < i; ++j) {
      std::vector<double> x, y;
      for (Eigen::Index r = 0; r < data.rows(); ++r)
        if (std::isfinite(data(r, i)) && std::isfinite(data(r, j))) {
          x.push_back(data(r, i));
          y.push_back(data(r, j));
        }
      out.n(i, j) = out.n(j, i) = static_cast<int>(x.size());
      if (x.size() < 3) continue;
      const auto res = pearson(x, y);
      if (res.degenerate) continue;
      out.r(i, j) = out.r(j, i) = res.statistic;
      out.p(i, j) = out.p(j, i) = res.p_value;
    }
  }
  return out;
}

}  // namespace

CorrelationMatrix correlation_matrix(std::span<const ConditionMatrix> matrices) {
  if (matrices.empty()) return {};
  const Eigen::Index rows = matrices.front().values.rows();
  std::vector<std::string> labels;
  Eigen::MatrixXd data(rows, static_cast<Eigen::Index>(matrices.size() * kConditionCount));
  Eigen::Index col = 0;
  for (const auto& m : matrices) {
    if (m.values.rows() != rows || m.participants != matrices.front().participants)
      throw InvalidArgument("correlation_matrix: matrices cover different participants");
    for (std::size_t c = 0; c < kConditionCount; ++c) {
      labels.push_back(std::string(to_string(m.dimension)) + " " + condition_label(c));
      data.col(col++) = m.values.col(static_cast<Eigen::Index>(c));
    }
  }
  return correlate_columns(std::move(labels), data);
}

CorrelationMatrix averaged_correlation_matrix(std::span<const ConditionMatrix> matrices) {
  if (matrices.empty()) return {};
  const Eigen::Index rows = matrices.front().values.rows();
  std::vector<std::string> labels;
  Eigen::MatrixXd data(rows, static_cast<Eigen::Index>(matrices.size()));
  for (std::size_t j = 0; j < matrices.size(); ++j) {
    const auto& m = matrices[j];
    if (m.values.rows() != rows || m.participants != matrices.front().participants)
      throw InvalidArgument("averaged_correlation_matrix: matrices cover different participants");
    labels.emplace_back(to_string(m.dimension));
    for (Eigen::Index r = 0; r < rows; ++r) {
      double sum = 0.0;
      int count = 0;
      for (Eigen::Index c = 0; c < m.values.cols(); ++c)
        if (std::isfinite(m.values(r, c))) {
          sum += m.values(r, c);
          ++count;
        }
      data(r, static_cast<Eigen::Index>(j)) = count > 0 ? sum / count : std::nan("");
    }
  }
  return correlate_columns(std::move(labels), data);
}

}  // namespace loadsense
