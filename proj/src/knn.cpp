#include "learn_detail.hpp"
#include "loadsense/classifiers.hpp"

namespace loadsense {

TrainedModel fit_knn(const Eigen::MatrixXd& x, const Labels& y, int k) {
  detail::check_training_shape(x, y, "fit_knn");
  if (k < 1) throw InvalidArgument("fit_knn: k must be >= 1");
  if (static_cast<Eigen::Index>(k) > x.rows())
    throw InvalidArgument("fit_knn: k = " + std::to_string(k) + " exceeds " +
                          std::to_string(x.rows()) + " training rows");
  TrainedModel model;
  model.kind = ModelKind::Knn;
  model.classes = detail::sorted_classes(y);
  model.scaler = fit_scaler(x);
  KnnParams p;
  p.k = k;
  p.train = model.scaler.apply(x);
  p.train_class = detail::class_indices(y, model.classes);
  model.params = std::move(p);
  return model;
}

}  // namespace loadsense
