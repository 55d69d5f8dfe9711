#pragma once

#include <Eigen/Core>

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "loadsense/scaler.hpp"

namespace loadsense {

/// Class labels are small integers (load level codes).
using Labels = std::vector<int>;

enum class ModelKind { Lda, Knn, AdaBoost, Ensemble };

std::string_view to_string(ModelKind kind);

struct LdaParams {
  double shrinkage = 0.0;
  Eigen::MatrixXd means;         ///< classes x features
  Eigen::MatrixXd cov_inverse;   ///< inverse of the shrunken pooled covariance
  Eigen::VectorXd log_priors;
};

struct KnnParams {
  int k = 1;
  Eigen::MatrixXd train;         ///< standardized training rows
  std::vector<int> train_class;  ///< index into TrainedModel::classes
};

/// h(x) = polarity if x[feature] > threshold, else -polarity.
struct Stump {
  int feature = 0;
  double threshold = 0.0;
  int polarity = 1;
  bool operator==(const Stump&) const = default;
};

/// One discrete-AdaBoost machine separating `positive_class` from the rest.
struct BoostedMachine {
  int positive_class = 0;  ///< index into TrainedModel::classes
  std::vector<Stump> stumps;
  std::vector<double> alphas;

  double margin(const Eigen::Ref<const Eigen::RowVectorXd>& x) const;
};

struct AdaBoostParams {
  int n_stumps = 0;
  /// Two classes: one machine for classes[1] vs classes[0]; otherwise one per class.
  std::vector<BoostedMachine> machines;
};

class TrainedModel;

struct EnsembleParams {
  std::vector<TrainedModel> members;
  std::vector<int> multiplicity;
};

/// A fitted classifier with its scaler. Immutable after fitting; predict is
/// deterministic and safe to call concurrently.
class TrainedModel {
public:
  ModelKind kind = ModelKind::Lda;
  Scaler scaler;
  std::vector<int> classes;  ///< sorted ascending
  std::variant<LdaParams, KnnParams, AdaBoostParams, EnsembleParams> params;

  /// Raw (unscaled) feature rows in, labels out.
  Labels predict(const Eigen::MatrixXd& x) const;
  /// Human-readable configuration, e.g. "KNN(k=5)".
  std::string describe() const;
};

double accuracy(const Labels& predicted, const Labels& truth);

/// Shrinkage LDA: pooled covariance shrunk toward (trace/p) I by `shrinkage`.
/// Throws InvalidArgument when the shrunken covariance is singular.
TrainedModel fit_lda(const Eigen::MatrixXd& x, const Labels& y, double shrinkage);

/// k nearest neighbours (Euclidean, standardized space). Vote ties go to the
/// tied class owning the nearest neighbour; distance ties to the lower index.
TrainedModel fit_knn(const Eigen::MatrixXd& x, const Labels& y, int k);

/// Discrete AdaBoost on decision stumps, one-vs-rest for more than two classes.
TrainedModel fit_adaboost(const Eigen::MatrixXd& x, const Labels& y, int n_stumps);

/// Plurality vote over members weighted by multiplicity; ties go to the
/// lowest label.
TrainedModel make_ensemble(std::vector<TrainedModel> members, std::vector<int> multiplicity);

Labels plurality_vote(const std::vector<const Labels*>& votes, const std::vector<int>& weights);

}  // namespace loadsense
