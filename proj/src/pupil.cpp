#include "loadsense/pupil.hpp"

#include <cmath>
#include <vector>

namespace loadsense {

namespace {

struct Run {
  std::size_t first = 0;
  std::size_t last = 0;  // inclusive
};

}  // namespace

PupilPreprocessResult preprocess_pupil(std::span<const PupilSample> raw, const PupilPolicy& policy) {
  if (raw.empty()) throw InvalidArgument("preprocess_pupil: empty input");
  if (!(policy.target_rate_hz > 0.0)) throw InvalidArgument("preprocess_pupil: target rate must be > 0");

  PupilPreprocessResult result;
  std::vector<PupilSample> valid;
  valid.reserve(raw.size());
  for (const auto& s : raw)
    if (s.confidence >= policy.confidence_threshold) valid.push_back(s);
  result.gap_fraction = 1.0 - static_cast<double>(valid.size()) / static_cast<double>(raw.size());
  if (result.gap_fraction > policy.max_gap_fraction) {
    result.missing_reason = "gap fraction above limit";
    return result;
  }

  // Longest stretch without an over-long gap. Leading/trailing gaps fall away.
  Run best{};
  bool have_best = false;
  Run cur{0, 0};
  for (std::size_t i = 1; i <= valid.size(); ++i) {
    const bool breaks = i == valid.size() ||
                        valid[i].t_s - valid[i - 1].t_s > policy.max_interpolated_gap_s + 1e-12;
    if (!breaks) continue;
    cur.last = i - 1;
    if (!have_best || valid[cur.last].t_s - valid[cur.first].t_s >
                          valid[best.last].t_s - valid[best.first].t_s) {
      best = cur;
      have_best = true;
    }
    cur.first = i;
  }
  if (!have_best) {
    result.missing_reason = "no usable samples";
    return result;
  }

  const double t0 = valid[best.first].t_s;
  const double t1 = valid[best.last].t_s;
  const double period = 1.0 / policy.target_rate_hz;
  const auto count = static_cast<std::size_t>(std::floor((t1 - t0) * policy.target_rate_hz + 1e-9)) + 1;
  if (static_cast<double>(count) * period < policy.min_usable_s) {
    result.missing_reason = "less than 2 s of usable signal";
    return result;
  }

  UniformPupilSignal sig;
  sig.start_s = t0;
  sig.rate_hz = policy.target_rate_hz;
  sig.samples.resize(static_cast<Eigen::Index>(count));
  std::size_t j = best.first;
  for (std::size_t k = 0; k < count; ++k) {
    const double t = t0 + static_cast<double>(k) * period;
    while (j + 1 <= best.last && valid[j + 1].t_s <= t + 1e-9) ++j;
    double v;
    if (std::abs(valid[j].t_s - t) <= 1e-9 || j == best.last) {
      v = valid[j].diameter_mm;
    } else {
      const auto& a = valid[j];
      const auto& b = valid[j + 1];
      const double w = (t - a.t_s) / (b.t_s - a.t_s);
      v = a.diameter_mm + w * (b.diameter_mm - a.diameter_mm);
    }
    sig.samples(static_cast<Eigen::Index>(k)) = v;
  }
  result.signal = std::move(sig);
  return result;
}

LhipaResult lhipa(const UniformPupilSignal& signal, const WaveletSpec& spec) {
  if (!(signal.rate_hz > 0.0)) throw InvalidArgument("lhipa: rate must be > 0");
  const auto n = static_cast<std::size_t>(signal.samples.size());
  const int max_level = dwt_max_level(n, spec.dec_lo.size());
  if (max_level < 2) throw InvalidArgument("lhipa: signal too short (" + std::to_string(n) + " samples)");

  const int high_level = 1;
  const int low_level = max_level / 2;
  Vector<double> high = dwt_detail(signal.samples, high_level, spec);
  Vector<double> low = dwt_detail(signal.samples, low_level, spec);
  high /= std::sqrt(std::ldexp(1.0, high_level));
  low /= std::sqrt(std::ldexp(1.0, low_level));

  const Eigen::Index step = Eigen::Index{1} << (low_level - high_level);
  Vector<double> ratio(low.size());
  for (Eigen::Index i = 0; i < low.size(); ++i) {
    const double den = high(i * step);
    ratio(i) = std::abs(den) < 1e-12 ? 0.0 : low(i) / den;
  }

  LhipaResult result;
  if (high.cwiseAbs().maxCoeff() < 1e-12 && low.cwiseAbs().maxCoeff() >= 1e-12)
    result.warning = "high-frequency band is zero; LHIPA set to 0";

  const Vector<double> maxima = modulus_maxima(ratio);
  const double len = static_cast<double>(maxima.size());
  const double mean = maxima.mean();
  const double sigma = std::sqrt((maxima.array() - mean).square().sum() / len);
  const double threshold = sigma * std::sqrt(2.0 * std::log2(len));

  std::size_t kept = 0;
  for (Eigen::Index i = 0; i < maxima.size(); ++i)
    if (maxima(i) != 0.0 && std::abs(maxima(i)) <= threshold) ++kept;
  result.value = static_cast<double>(kept) / signal.duration_s();
  return result;
}

}  // namespace loadsense
