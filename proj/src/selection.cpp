#include "loadsense/selection.hpp"

#include <algorithm>
#include <cstdio>
#include <optional>

#include "loadsense/parallel.hpp"
#include "loadsense/types.hpp"

namespace loadsense {

std::string ModelConfig::label() const {
  char buf[64];
  switch (kind) {
    case ModelKind::Lda: std::snprintf(buf, sizeof buf, "LDA(shrinkage=%g)", shrinkage); break;
    case ModelKind::Knn: std::snprintf(buf, sizeof buf, "KNN(k=%d)", k); break;
    case ModelKind::AdaBoost: std::snprintf(buf, sizeof buf, "AdaBoost(n_stumps=%d)", n_stumps); break;
    case ModelKind::Ensemble: return "Ensemble";
  }
  return buf;
}

TrainedModel fit_model(const ModelConfig& config, const Eigen::MatrixXd& x, const Labels& y) {
  switch (config.kind) {
    case ModelKind::Lda: return fit_lda(x, y, config.shrinkage);
    case ModelKind::Knn: return fit_knn(x, y, config.k);
    case ModelKind::AdaBoost: return fit_adaboost(x, y, config.n_stumps);
    case ModelKind::Ensemble: break;
  }
  throw InvalidArgument("fit_model: ensembles are built by greedy_ensemble");
}

std::vector<ModelConfig> ModelGrid::configs(ModelKind kind) const {
  std::vector<ModelConfig> out;
  switch (kind) {
    case ModelKind::Lda:
      for (double s : lda_shrinkage) out.push_back({ModelKind::Lda, s, 0, 0});
      break;
    case ModelKind::Knn:
      for (int k : knn_k) out.push_back({ModelKind::Knn, 0.0, k, 0});
      break;
    case ModelKind::AdaBoost:
      for (int n : adaboost_stumps) out.push_back({ModelKind::AdaBoost, 0.0, 0, n});
      break;
    case ModelKind::Ensemble:
      break;
  }
  return out;
}

std::vector<ModelConfig> ModelGrid::configs() const {
  std::vector<ModelConfig> out;
  for (ModelKind kind : {ModelKind::Lda, ModelKind::Knn, ModelKind::AdaBoost}) {
    auto part = configs(kind);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

std::vector<Candidate> grid_search(const Eigen::MatrixXd& x_train, const Labels& y_train,
                                   const Eigen::MatrixXd& x_val, const Labels& y_val,
                                   const std::vector<ModelConfig>& configs, unsigned threads) {
  if (y_val.empty()) throw InvalidArgument("grid_search: empty validation set");
  if (configs.empty()) throw InvalidArgument("grid_search: empty grid");
  std::vector<std::optional<Candidate>> slots(configs.size());
  parallel_for(configs.size(), threads, [&](std::size_t i) {
    try {
      Candidate c;
      c.config = configs[i];
      c.model = fit_model(configs[i], x_train, y_train);
      c.val_predictions = c.model.predict(x_val);
      c.val_accuracy = accuracy(c.val_predictions, y_val);
      slots[i] = std::move(c);
    } catch (const InvalidArgument&) {
      // configuration not applicable to this training set
    }
  });
  std::vector<Candidate> ranked;
  for (auto& s : slots)
    if (s) ranked.push_back(std::move(*s));
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const Candidate& a, const Candidate& b) { return a.val_accuracy > b.val_accuracy; });
  return ranked;
}

EnsembleResult greedy_ensemble(const std::vector<Candidate>& candidates, const Labels& y_val,
                               int max_size) {
  if (candidates.empty()) throw InvalidArgument("greedy_ensemble: no candidates");
  if (max_size < 1) throw InvalidArgument("greedy_ensemble: max_size must be >= 1");

  std::size_t first = 0;
  for (std::size_t i = 1; i < candidates.size(); ++i)
    if (candidates[i].val_accuracy > candidates[first].val_accuracy) first = i;

  std::vector<int> mult(candidates.size(), 0);
  mult[first] = 1;
  double current = candidates[first].val_accuracy;

  std::vector<const Labels*> votes;
  for (const auto& c : candidates) votes.push_back(&c.val_predictions);

  for (int size = 1; size < max_size; ++size) {
    double best_acc = -1.0;
    std::size_t best = 0;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      ++mult[i];
      const double acc = accuracy(plurality_vote(votes, mult), y_val);
      --mult[i];
      if (acc > best_acc) {
        best_acc = acc;
        best = i;
      }
    }
    if (!(best_acc > current)) break;
    ++mult[best];
    current = best_acc;
  }

  EnsembleResult result;
  result.multiplicity = mult;
  result.val_accuracy = current;
  std::vector<TrainedModel> members;
  std::vector<int> weights;
  for (std::size_t i = 0; i < candidates.size(); ++i)
    if (mult[i] > 0) {
      members.push_back(candidates[i].model);
      weights.push_back(mult[i]);
    }
  result.model = make_ensemble(std::move(members), std::move(weights));
  return result;
}

}  // namespace loadsense
