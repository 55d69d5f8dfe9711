#include <Eigen/Dense>

#include <cmath>

#include "learn_detail.hpp"
#include "loadsense/classifiers.hpp"

namespace loadsense {

TrainedModel fit_lda(const Eigen::MatrixXd& x, const Labels& y, double shrinkage) {
  detail::check_training_shape(x, y, "fit_lda");
  if (!(shrinkage >= 0.0 && shrinkage <= 1.0)) throw InvalidArgument("fit_lda: shrinkage must lie in [0, 1]");

  TrainedModel model;
  model.kind = ModelKind::Lda;
  model.classes = detail::sorted_classes(y);
  if (model.classes.size() < 2) throw InvalidArgument("fit_lda: need at least 2 classes");
  model.scaler = fit_scaler(x);
  const Eigen::MatrixXd z = model.scaler.apply(x);
  const auto idx = detail::class_indices(y, model.classes);

  const auto k = static_cast<Eigen::Index>(model.classes.size());
  const Eigen::Index p = z.cols();
  const Eigen::Index n = z.rows();
  LdaParams lda;
  lda.shrinkage = shrinkage;
  lda.means = Eigen::MatrixXd::Zero(k, p);
  Eigen::VectorXd counts = Eigen::VectorXd::Zero(k);
  for (Eigen::Index r = 0; r < n; ++r) {
    lda.means.row(idx[static_cast<std::size_t>(r)]) += z.row(r);
    counts(idx[static_cast<std::size_t>(r)]) += 1.0;
  }
  for (Eigen::Index c = 0; c < k; ++c) lda.means.row(c) /= counts(c);
  lda.log_priors = (counts.array() / static_cast<double>(n)).log();

  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(p, p);
  for (Eigen::Index r = 0; r < n; ++r) {
    const Eigen::RowVectorXd d = z.row(r) - lda.means.row(idx[static_cast<std::size_t>(r)]);
    cov.noalias() += d.transpose() * d;
  }
  // With one sample per class there is no within-class scatter to pool.
  if (n > k) cov /= static_cast<double>(n - k);

  double target = cov.trace() / static_cast<double>(p);
  if (!(target > 0.0)) target = 1.0;
  const Eigen::MatrixXd shrunk =
      (1.0 - shrinkage) * cov + shrinkage * target * Eigen::MatrixXd::Identity(p, p);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(shrunk);
  const double max_ev = eig.eigenvalues().maxCoeff();
  const double min_ev = eig.eigenvalues().minCoeff();
  if (!(max_ev > 0.0) || min_ev <= 1e-12 * max_ev)
    throw InvalidArgument("fit_lda: shrunken covariance is singular; use shrinkage > 0");
  lda.cov_inverse = eig.eigenvectors() * eig.eigenvalues().cwiseInverse().asDiagonal() *
                    eig.eigenvectors().transpose();
  model.params = std::move(lda);
  return model;
}

}  // namespace loadsense
