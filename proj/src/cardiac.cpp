#include "loadsense/cardiac.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "loadsense/types.hpp"

namespace loadsense {

void RrPolicy::validate() const {
  if (!(min_rr_ms > 0.0 && min_rr_ms < max_rr_ms))
    throw InvalidArgument("RrPolicy requires 0 < min_rr_ms < max_rr_ms");
  if (!(max_successive_change > 0.0 && max_successive_change < 1.0))
    throw InvalidArgument("RrPolicy requires 0 < max_successive_change < 1");
}

std::vector<double> clean_rr(std::span<const double> rr_ms, const RrPolicy& policy) {
  policy.validate();
  if (rr_ms.empty()) throw InvalidArgument("clean_rr: empty input");
  std::vector<double> kept;
  kept.reserve(rr_ms.size());
  for (double rr : rr_ms) {
    if (!(rr >= policy.min_rr_ms && rr <= policy.max_rr_ms)) continue;
    if (!kept.empty() && std::abs(rr - kept.back()) > policy.max_successive_change * kept.back())
      continue;
    kept.push_back(rr);
  }
  if (kept.empty()) throw DataError("no valid RR intervals");
  return kept;
}

HrStats hr_stats(std::span<const double> rr_ms) {
  if (rr_ms.empty()) throw InvalidArgument("hr_stats: empty input");
  std::vector<double> hr(rr_ms.size());
  for (std::size_t i = 0; i < rr_ms.size(); ++i) {
    if (!(rr_ms[i] > 0.0)) throw InvalidArgument("hr_stats: non-positive RR interval");
    hr[i] = 60000.0 / rr_ms[i];
  }
  const auto n = static_cast<double>(hr.size());
  HrStats s;
  s.min = *std::min_element(hr.begin(), hr.end());
  s.max = *std::max_element(hr.begin(), hr.end());
  // Summation rounding may push a constant series' mean one ulp outside [min, max].
  s.mean = std::clamp(std::accumulate(hr.begin(), hr.end(), 0.0) / n, s.min, s.max);
  if (hr.size() > 1) {
    double ss = 0.0;
    for (double h : hr) ss += (h - s.mean) * (h - s.mean);
    s.std = std::sqrt(ss / (n - 1.0));
  }
  return s;
}

double rmssd(std::span<const double> rr_ms) {
  if (rr_ms.size() < 2) throw InvalidArgument("RMSSD undefined for fewer than 2 intervals");
  double ss = 0.0;
  for (std::size_t i = 1; i < rr_ms.size(); ++i) {
    const double d = rr_ms[i] - rr_ms[i - 1];
    ss += d * d;
  }
  return std::sqrt(ss / static_cast<double>(rr_ms.size() - 1));
}

CardiacFeatures cardiac_features(std::span<const double> rr_ms, const RrPolicy& policy) {
  const auto clean = clean_rr(rr_ms, policy);
  const auto hr = hr_stats(clean);
  CardiacFeatures f;
  f.hr_mean = hr.mean;
  f.hr_min = hr.min;
  f.hr_max = hr.max;
  f.hr_std = hr.std;
  f.n_beats_used = clean.size();
  if (clean.size() < 2) throw DataError("RMSSD undefined: fewer than 2 clean RR intervals");
  f.rmssd = rmssd(clean);
  return f;
}

}  // namespace loadsense
