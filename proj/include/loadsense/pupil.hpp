#pragma once

#include <optional>
#include <span>
#include <string>

#include "loadsense/types.hpp"
#include "loadsense/wavelet.hpp"

namespace loadsense {

/// Pupil diameter on a uniform time grid.
struct UniformPupilSignal {
  double start_s = 0.0;
  double rate_hz = 0.0;
  Vector<double> samples;

  /// samples / rate, i.e. the span covered by n sampling periods.
  double duration_s() const { return static_cast<double>(samples.size()) / rate_hz; }
};

struct PupilPolicy {
  double target_rate_hz = 120.0;
  double confidence_threshold = 0.6;
  /// Longest gap bridged by interpolation inside a usable stretch.
  double max_interpolated_gap_s = 0.5;
  double max_gap_fraction = 0.25;
  double min_usable_s = 2.0;
};

struct PupilPreprocessResult {
  std::optional<UniformPupilSignal> signal;  ///< empty when the feature is missing
  std::string missing_reason;
  double gap_fraction = 0.0;
};

/// Drops low-confidence samples, keeps the longest stretch whose internal
/// gaps are at most max_interpolated_gap_s, and resamples it to the target
/// rate by linear interpolation.
PupilPreprocessResult preprocess_pupil(std::span<const PupilSample> raw, const PupilPolicy& policy = {});

struct LhipaResult {
  double value = 0.0;
  std::optional<std::string> warning;
};

/// Low/high index of pupillary activity, in maxima per second.
///
/// Detail bands: high = level 1, low = floor(maxlevel / 2). Both are scaled by
/// 1/sqrt(2^level); the low band is divided by the high band sampled at
/// i * 2^(low - high) (zero where the divisor is below 1e-12). The modulus
/// maxima of that ratio are thresholded with sigma * sqrt(2 * log2(n)) using
/// the population std of the maxima sequence; maxima above the threshold are
/// dropped and the survivors are counted per second of signal.
///
/// Throws InvalidArgument when floor(log2(n / 31)) < 2.
LhipaResult lhipa(const UniformPupilSignal& signal, const WaveletSpec& spec = sym16());

}  // namespace loadsense
