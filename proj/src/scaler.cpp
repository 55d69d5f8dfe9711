#include "loadsense/scaler.hpp"

#include <cmath>

#include "loadsense/types.hpp"

namespace loadsense {

Scaler fit_scaler(const Eigen::MatrixXd& x) {
  if (x.rows() < 1) throw InvalidArgument("fit_scaler: empty training set");
  Scaler s;
  s.mean = Eigen::VectorXd::Zero(x.cols());
  s.std = Eigen::VectorXd::Ones(x.cols());
  for (Eigen::Index c = 0; c < x.cols(); ++c) {
    double sum = 0.0;
    Eigen::Index n = 0;
    for (Eigen::Index r = 0; r < x.rows(); ++r)
      if (std::isfinite(x(r, c))) {
        sum += x(r, c);
        ++n;
      }
    if (n == 0) continue;
    const double mean = sum / static_cast<double>(n);
    double ss = 0.0;
    for (Eigen::Index r = 0; r < x.rows(); ++r)
      if (std::isfinite(x(r, c))) ss += (x(r, c) - mean) * (x(r, c) - mean);
    s.mean(c) = mean;
    const double sd = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1)) : 0.0;
    s.std(c) = sd > 0.0 ? sd : 1.0;
  }
  return s;
}

Eigen::MatrixXd Scaler::apply(const Eigen::MatrixXd& x) const {
  if (x.cols() != mean.size()) throw InvalidArgument("Scaler::apply: column count mismatch");
  Eigen::MatrixXd z(x.rows(), x.cols());
  for (Eigen::Index c = 0; c < x.cols(); ++c)
    for (Eigen::Index r = 0; r < x.rows(); ++r)
      z(r, c) = std::isfinite(x(r, c)) ? (x(r, c) - mean(c)) / std(c) : 0.0;
  return z;
}

Eigen::MatrixXd Scaler::inverse(const Eigen::MatrixXd& z) const {
  if (z.cols() != mean.size()) throw InvalidArgument("Scaler::inverse: column count mismatch");
  return (z.array().rowwise() * std.transpose().array()).rowwise() + mean.transpose().array();
}

}  // namespace loadsense
