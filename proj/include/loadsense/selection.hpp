#pragma once

#include <Eigen/Core>

#include <string>
#include <vector>

#include "loadsense/classifiers.hpp"

namespace loadsense {

struct ModelConfig {
  ModelKind kind = ModelKind::Lda;
  double shrinkage = 0.1;  ///< LDA
  int k = 5;               ///< KNN
  int n_stumps = 50;       ///< AdaBoost

  std::string label() const;
  bool operator==(const ModelConfig&) const = default;
};

TrainedModel fit_model(const ModelConfig& config, const Eigen::MatrixXd& x, const Labels& y);

/// Hyper-parameter grids. configs() enumerates LDA, then KNN, then AdaBoost,
/// each in grid order; that order breaks validation-accuracy ties.
struct ModelGrid {
  std::vector<double> lda_shrinkage{0.01, 0.1, 0.3, 0.5};
  std::vector<int> knn_k{1, 3, 5, 7, 9};
  std::vector<int> adaboost_stumps{25, 50, 100};

  std::vector<ModelConfig> configs() const;
  std::vector<ModelConfig> configs(ModelKind kind) const;
};

struct Candidate {
  ModelConfig config;
  TrainedModel model;
  double val_accuracy = 0.0;
  Labels val_predictions;
};

/// Trains every configuration on the training rows and ranks them by
/// validation accuracy (descending, stable). Configurations that cannot be
/// fitted (k above the training size, singular LDA) are left out.
std::vector<Candidate> grid_search(const Eigen::MatrixXd& x_train, const Labels& y_train,
                                   const Eigen::MatrixXd& x_val, const Labels& y_val,
                                   const std::vector<ModelConfig>& configs, unsigned threads = 1);

struct EnsembleResult {
  TrainedModel model;
  double val_accuracy = 0.0;
  std::vector<int> multiplicity;  ///< per candidate, aligned with the input list
};

/// Greedy forward selection with replacement: start from the most accurate
/// candidate, then keep adding whichever candidate most improves validation
/// accuracy of the multiplicity-weighted plurality vote. Stops at max_size
/// members or when no addition strictly improves.
EnsembleResult greedy_ensemble(const std::vector<Candidate>& candidates, const Labels& y_val,
                               int max_size = 10);

}  // namespace loadsense
