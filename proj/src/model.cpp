#include "loadsense/classifiers.hpp"

#include <cstdio>
#include <map>

#include "loadsense/types.hpp"

namespace loadsense {

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::Lda: return "LDA";
    case ModelKind::Knn: return "KNN";
    case ModelKind::AdaBoost: return "AdaBoost";
    case ModelKind::Ensemble: return "Ensemble";
  }
  return "?";
}

double accuracy(const Labels& predicted, const Labels& truth) {
  if (predicted.size() != truth.size()) throw InvalidArgument("accuracy: size mismatch");
  if (truth.empty()) throw InvalidArgument("accuracy: empty label set");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) hits += predicted[i] == truth[i];
  return static_cast<double>(hits) / static_cast<double>(truth.size());
}

Labels plurality_vote(const std::vector<const Labels*>& votes, const std::vector<int>& weights) {
  if (votes.empty()) throw InvalidArgument("plurality_vote: no voters");
  const std::size_t n = votes.front()->size();
  Labels out(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::map<int, int> tally;  // ordered: first maximum is the lowest label
    for (std::size_t m = 0; m < votes.size(); ++m) tally[(*votes[m])[i]] += weights[m];
    int best_label = tally.begin()->first;
    int best_votes = -1;
    for (const auto& [label, count] : tally)
      if (count > best_votes) {
        best_votes = count;
        best_label = label;
      }
    out[i] = best_label;
  }
  return out;
}

TrainedModel make_ensemble(std::vector<TrainedModel> members, std::vector<int> multiplicity) {
  if (members.empty() || members.size() != multiplicity.size())
    throw InvalidArgument("make_ensemble: members and multiplicities must be non-empty and aligned");
  TrainedModel model;
  model.kind = ModelKind::Ensemble;
  for (const auto& m : members)
    for (int c : m.classes)
      if (std::find(model.classes.begin(), model.classes.end(), c) == model.classes.end())
        model.classes.push_back(c);
  std::sort(model.classes.begin(), model.classes.end());
  const auto p = members.front().scaler.features();
  model.scaler.mean = Eigen::VectorXd::Zero(p);
  model.scaler.std = Eigen::VectorXd::Ones(p);
  model.params = EnsembleParams{std::move(members), std::move(multiplicity)};
  return model;
}

Labels TrainedModel::predict(const Eigen::MatrixXd& x) const {
  if (kind == ModelKind::Ensemble) {
    const auto& ens = std::get<EnsembleParams>(params);
    std::vector<Labels> member_votes;
    member_votes.reserve(ens.members.size());
    for (const auto& m : ens.members) member_votes.push_back(m.predict(x));
    std::vector<const Labels*> ptrs;
    for (const auto& v : member_votes) ptrs.push_back(&v);
    return plurality_vote(ptrs, ens.multiplicity);
  }

  const Eigen::MatrixXd z = scaler.apply(x);
  Labels out(static_cast<std::size_t>(z.rows()));
  switch (kind) {
    case ModelKind::Lda: {
      const auto& p = std::get<LdaParams>(params);
      // delta_c(x) = x' S^-1 mu_c - 0.5 mu_c' S^-1 mu_c + log pi_c
      const Eigen::MatrixXd w = p.means * p.cov_inverse;  // classes x features
      Eigen::VectorXd bias(p.means.rows());
      for (Eigen::Index c = 0; c < p.means.rows(); ++c)
        bias(c) = -0.5 * w.row(c).dot(p.means.row(c)) + p.log_priors(c);
      const Eigen::MatrixXd scores = (z * w.transpose()).rowwise() + bias.transpose();
      for (Eigen::Index r = 0; r < z.rows(); ++r) {
        Eigen::Index best = 0;
        for (Eigen::Index c = 1; c < scores.cols(); ++c)
          if (scores(r, c) > scores(r, best)) best = c;
        out[static_cast<std::size_t>(r)] = classes[static_cast<std::size_t>(best)];
      }
      break;
    }
    case ModelKind::Knn: {
      const auto& p = std::get<KnnParams>(params);
      const Eigen::Index n = p.train.rows();
      std::vector<std::pair<double, Eigen::Index>> dist(static_cast<std::size_t>(n));
      for (Eigen::Index r = 0; r < z.rows(); ++r) {
        for (Eigen::Index i = 0; i < n; ++i)
          dist[static_cast<std::size_t>(i)] = {(p.train.row(i) - z.row(r)).squaredNorm(), i};
        std::partial_sort(dist.begin(), dist.begin() + p.k, dist.end());
        std::vector<int> votes(classes.size(), 0);
        for (int j = 0; j < p.k; ++j) ++votes[static_cast<std::size_t>(p.train_class[static_cast<std::size_t>(dist[j].second)])];
        const int top = *std::max_element(votes.begin(), votes.end());
        int winner = -1;
        for (int j = 0; j < p.k && winner < 0; ++j) {
          const int c = p.train_class[static_cast<std::size_t>(dist[j].second)];
          if (votes[static_cast<std::size_t>(c)] == top) winner = c;
        }
        out[static_cast<std::size_t>(r)] = classes[static_cast<std::size_t>(winner)];
      }
      break;
    }
    case ModelKind::AdaBoost: {
      const auto& p = std::get<AdaBoostParams>(params);
      for (Eigen::Index r = 0; r < z.rows(); ++r) {
        std::size_t best = 0;
        if (classes.size() == 2) {
          best = p.machines.front().margin(z.row(r)) > 0.0 ? 1 : 0;
        } else {
          double best_margin = -INFINITY;
          for (const auto& m : p.machines) {
            const double s = m.margin(z.row(r));
            if (s > best_margin) {
              best_margin = s;
              best = static_cast<std::size_t>(m.positive_class);
            }
          }
        }
        out[static_cast<std::size_t>(r)] = classes[best];
      }
      break;
    }
    case ModelKind::Ensemble:
      break;
  }
  return out;
}

std::string TrainedModel::describe() const {
  char buf[96];
  switch (kind) {
    case ModelKind::Lda:
      std::snprintf(buf, sizeof buf, "LDA(shrinkage=%g)", std::get<LdaParams>(params).shrinkage);
      return buf;
    case ModelKind::Knn:
      std::snprintf(buf, sizeof buf, "KNN(k=%d)", std::get<KnnParams>(params).k);
      return buf;
    case ModelKind::AdaBoost:
      std::snprintf(buf, sizeof buf, "AdaBoost(n_stumps=%d)", std::get<AdaBoostParams>(params).n_stumps);
      return buf;
    case ModelKind::Ensemble: {
      const auto& ens = std::get<EnsembleParams>(params);
      std::string s = "Ensemble[";
      for (std::size_t i = 0; i < ens.members.size(); ++i) {
        if (i) s += ", ";
        s += std::to_string(ens.multiplicity[i]) + "x" + ens.members[i].describe();
      }
      return s + "]";
    }
  }
  return "?";
}

}  // namespace loadsense
