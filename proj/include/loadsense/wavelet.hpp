#pragma once

#include <Eigen/Core>

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <string_view>
#include <utility>

#include "loadsense/types.hpp"

namespace loadsense {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Orthogonal wavelet decomposition filter pair. Extension mode is always
/// periodization.
struct WaveletSpec {
  static constexpr std::size_t kLength = 32;
  std::string_view name;
  std::array<double, kLength> dec_lo;
  std::array<double, kLength> dec_hi;
};

namespace detail {

// Symlet-16 decomposition low-pass filter.
inline constexpr std::array<double, WaveletSpec::kLength> kSym16DecLo{
    6.230006701220761e-06,   -3.113556407621969e-06, -0.00010943147929529757,
    2.8078582128442894e-05,  0.0008523547108047095,  -0.0001084456223089688,
    -0.0038809122526038786,  0.0007182119788317892,  0.012666731659857348,
    -0.0031265171722710075,  -0.031051202843553064,  0.004869274404904607,
    0.032333091610663785,    -0.06698304907021778,   -0.034574228416972504,
    0.39712293362064416,     0.7565249878756971,     0.47534280601152273,
    -0.054040601387606135,   -0.15959219218520598,   0.03072113906330156,
    0.07803785290341991,     -0.003510275068374009,  -0.024952758046290123,
    0.001359844742484172,    0.0069377611308027096,  -0.00022211647621176323,
    -0.0013387206066921965,  3.656592483348223e-05,  0.00016545679579108483,
    -5.396483179315242e-06,  -1.0797982104319795e-05};

/// hi[k] = (-1)^(k+1) * lo[L-1-k]
constexpr std::array<double, WaveletSpec::kLength> quadrature_mirror(
    const std::array<double, WaveletSpec::kLength>& lo) {
  std::array<double, WaveletSpec::kLength> hi{};
  for (std::size_t k = 0; k < lo.size(); ++k) {
    const double v = lo[lo.size() - 1 - k];
    hi[k] = (k % 2 == 0) ? -v : v;
  }
  return hi;
}

}  // namespace detail

inline const WaveletSpec& sym16() {
  static constexpr WaveletSpec spec{"sym16", detail::kSym16DecLo,
                                    detail::quadrature_mirror(detail::kSym16DecLo)};
  return spec;
}

/// Convolves with `filter` and keeps every second output under periodized
/// extension. Odd-length input is first padded with a copy of its last sample,
/// so the output has ceil(n/2) entries.
template <typename Derived>
Vector<typename Derived::Scalar> periodized_filter_downsample(
    const Eigen::MatrixBase<Derived>& x, std::span<const double> filter) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = x.size();
  if (n < 1) throw InvalidArgument("periodized_filter_downsample: empty signal");
  const Eigen::Index m = n + (n % 2);
  const auto f = static_cast<Eigen::Index>(filter.size());
  Vector<Scalar> out(m / 2);
  auto ext = [&](Eigen::Index k) -> Scalar {
    k %= m;
    if (k < 0) k += m;
    return k < n ? x(k) : x(n - 1);
  };
  for (Eigen::Index o = 0; o < m / 2; ++o) {
    Scalar sum(0);
    const Eigen::Index centre = f / 2 + 2 * o;
    for (Eigen::Index j = 0; j < f; ++j) sum += Scalar(filter[j]) * ext(centre - j);
    out(o) = sum;
  }
  return out;
}

/// Largest useful decomposition depth: floor(log2(n / (filter_len - 1))).
inline int dwt_max_level(std::size_t n, std::size_t filter_len = WaveletSpec::kLength) {
  if (filter_len < 2 || n < filter_len - 1) return 0;
  return static_cast<int>(std::floor(std::log2(static_cast<double>(n) /
                                               static_cast<double>(filter_len - 1))));
}

/// One analysis step: (approximation, detail).
template <typename Derived>
std::pair<Vector<typename Derived::Scalar>, Vector<typename Derived::Scalar>> dwt_step(
    const Eigen::MatrixBase<Derived>& x, const WaveletSpec& spec = sym16()) {
  return {periodized_filter_downsample(x, spec.dec_lo), periodized_filter_downsample(x, spec.dec_hi)};
}

/// Approximation coefficients after `level` low-pass stages.
template <typename Derived>
Vector<typename Derived::Scalar> dwt_approx(const Eigen::MatrixBase<Derived>& x, int level,
                                            const WaveletSpec& spec = sym16()) {
  if (level < 0) throw InvalidArgument("dwt_approx: negative level");
  if (static_cast<double>(x.size()) < std::ldexp(1.0, level))
    throw InvalidArgument("dwt_approx: signal too short for level " + std::to_string(level));
  Vector<typename Derived::Scalar> a = x;
  for (int l = 0; l < level; ++l) a = periodized_filter_downsample(a, spec.dec_lo);
  return a;
}

/// Detail coefficients at `level` (>= 1): level-1 low-pass stages, then one
/// high-pass stage. Length is ceil(n / 2^level).
template <typename Derived>
Vector<typename Derived::Scalar> dwt_detail(const Eigen::MatrixBase<Derived>& x, int level,
                                            const WaveletSpec& spec = sym16()) {
  if (level < 1) throw InvalidArgument("dwt_detail: level must be >= 1");
  if (static_cast<double>(x.size()) < std::ldexp(1.0, level))
    throw InvalidArgument("dwt_detail: signal too short for level " + std::to_string(level));
  return periodized_filter_downsample(dwt_approx(x, level - 1, spec), spec.dec_hi);
}

/// Keeps x[i] where |x[i]| > |x[i-1]| and |x[i]| >= |x[i+1]|; zero elsewhere.
/// The two endpoints are never maxima.
template <typename Derived>
Vector<typename Derived::Scalar> modulus_maxima(const Eigen::MatrixBase<Derived>& x) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = x.size();
  Vector<Scalar> out = Vector<Scalar>::Zero(n);
  for (Eigen::Index i = 1; i + 1 < n; ++i) {
    const Scalar mag = std::abs(x(i));
    if (mag > std::abs(x(i - 1)) && mag >= std::abs(x(i + 1))) out(i) = x(i);
  }
  return out;
}

}  // namespace loadsense
