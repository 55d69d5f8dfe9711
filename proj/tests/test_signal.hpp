#pragma once

// SplitMix64 test signals shared with tests/oracle/lhipa_oracle.py; both
// sides must produce identical samples.

#include <cmath>
#include <cstdint>
#include <numbers>

#include "loadsense/pupil.hpp"

namespace loadsense::testing {

class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  double uniform() { return static_cast<double>(next() >> 11) * (1.0 / 9007199254740992.0); }

private:
  std::uint64_t state_;
};

inline UniformPupilSignal test_signal(std::uint64_t seed, double rate_hz = 120.0) {
  SplitMix64 rng(seed);
  const auto n = 1500 + static_cast<Eigen::Index>(rng.uniform() * 18000.0);
  const double f1 = 0.1 + 0.4 * rng.uniform();
  const double f2 = 1.0 + 3.0 * rng.uniform();
  const double phase = 2.0 * std::numbers::pi * rng.uniform();
  const double noise = 0.01 + 0.09 * rng.uniform();
  UniformPupilSignal sig;
  sig.rate_hz = rate_hz;
  sig.samples.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / 120.0;
    double v = 4.0 + 0.3 * std::sin(2.0 * std::numbers::pi * f1 * t + phase);
    v += 0.1 * std::sin(2.0 * std::numbers::pi * f2 * t);
    v += noise * (rng.uniform() - 0.5);
    sig.samples(i) = v;
  }
  return sig;
}

}  // namespace loadsense::testing
