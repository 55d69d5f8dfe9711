#pragma once

#include <Eigen/Core>

namespace loadsense {

/// Per-column z-scoring learned from training rows. NaN entries are missing:
/// they are ignored while fitting and imputed with the training mean.
struct Scaler {
  Eigen::VectorXd mean;
  Eigen::VectorXd std;  ///< sample std; 1 where the training column is constant

  Eigen::MatrixXd apply(const Eigen::MatrixXd& x) const;
  Eigen::MatrixXd inverse(const Eigen::MatrixXd& z) const;
  Eigen::Index features() const { return mean.size(); }
};

/// Throws InvalidArgument on an empty training set.
Scaler fit_scaler(const Eigen::MatrixXd& x_train);
inline Eigen::MatrixXd apply_scaler(const Scaler& s, const Eigen::MatrixXd& x) { return s.apply(x); }

}  // namespace loadsense
