#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace loadsense {

namespace detail {

// Modified Lentz evaluation of the incomplete-beta continued fraction.
template <typename Scalar>
Scalar beta_continued_fraction(Scalar a, Scalar b, Scalar x) {
  constexpr int kMaxIter = 10000;
  const Scalar eps = std::numeric_limits<Scalar>::epsilon();
  const Scalar tiny = std::numeric_limits<Scalar>::min() / eps;
  const Scalar qab = a + b;
  const Scalar qap = a + Scalar(1);
  const Scalar qam = a - Scalar(1);
  Scalar c(1);
  Scalar d = Scalar(1) - qab * x / qap;
  if (std::abs(d) < tiny) d = tiny;
  d = Scalar(1) / d;
  Scalar h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const Scalar m2 = Scalar(2 * m);
    Scalar aa = Scalar(m) * (b - Scalar(m)) * x / ((qam + m2) * (a + m2));
    d = Scalar(1) + aa * d;
    if (std::abs(d) < tiny) d = tiny;
    c = Scalar(1) + aa / c;
    if (std::abs(c) < tiny) c = tiny;
    d = Scalar(1) / d;
    h *= d * c;
    aa = -(a + Scalar(m)) * (qab + Scalar(m)) * x / ((a + m2) * (qap + m2));
    d = Scalar(1) + aa * d;
    if (std::abs(d) < tiny) d = tiny;
    c = Scalar(1) + aa / c;
    if (std::abs(c) < tiny) c = tiny;
    d = Scalar(1) / d;
    const Scalar del = d * c;
    h *= del;
    if (std::abs(del - Scalar(1)) <= eps) return h;
  }
  throw std::runtime_error("incomplete beta continued fraction did not converge");
}

}  // namespace detail

/// Regularized incomplete beta I_x(a, b). `one_minus_x` lets callers pass an
/// accurately computed 1 - x when x is close to 1.
template <typename Scalar>
Scalar regularized_incomplete_beta(Scalar a, Scalar b, Scalar x, Scalar one_minus_x) {
  if (!(a > 0) || !(b > 0)) throw std::invalid_argument("incomplete beta: a, b must be > 0");
  if (!(x >= 0) || !(x <= 1)) throw std::invalid_argument("incomplete beta: x outside [0, 1]");
  if (x == Scalar(0)) return Scalar(0);
  if (one_minus_x == Scalar(0)) return Scalar(1);
  const Scalar log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) +
                           b * std::log(one_minus_x);
  const Scalar front = std::exp(log_front);
  if (x < (a + Scalar(1)) / (a + b + Scalar(2)))
    return front * detail::beta_continued_fraction(a, b, x) / a;
  return Scalar(1) - front * detail::beta_continued_fraction(b, a, one_minus_x) / b;
}

template <typename Scalar>
Scalar regularized_incomplete_beta(Scalar a, Scalar b, Scalar x) {
  return regularized_incomplete_beta(a, b, x, Scalar(1) - x);
}

/// P(|T| >= |t|) for Student's t with `df` degrees of freedom.
template <typename Scalar>
Scalar student_t_two_tailed(Scalar t, Scalar df) {
  if (!(df > 0)) throw std::invalid_argument("student_t: df must be > 0");
  if (std::isnan(t)) return std::numeric_limits<Scalar>::quiet_NaN();
  if (std::isinf(t)) return Scalar(0);
  const Scalar t2 = t * t;
  const Scalar x = df / (df + t2);
  const Scalar one_minus_x = t2 / (df + t2);
  const Scalar p = regularized_incomplete_beta(df / Scalar(2), Scalar(0.5), x, one_minus_x);
  return p < Scalar(0) ? Scalar(0) : (p > Scalar(1) ? Scalar(1) : p);
}

/// Student's t cumulative distribution function.
template <typename Scalar>
Scalar student_t_cdf(Scalar t, Scalar df) {
  if (std::isinf(t)) return t > 0 ? Scalar(1) : Scalar(0);
  const Scalar tail = student_t_two_tailed(t, df) / Scalar(2);
  return t >= 0 ? Scalar(1) - tail : tail;
}

}  // namespace loadsense
