#include <algorithm>
#include <cmath>
#include <numeric>

#include "learn_detail.hpp"
#include "loadsense/classifiers.hpp"

namespace loadsense {

double BoostedMachine::margin(const Eigen::Ref<const Eigen::RowVectorXd>& x) const {
  double s = 0.0;
  for (std::size_t t = 0; t < stumps.size(); ++t) {
    const auto& st = stumps[t];
    const int h = x(st.feature) > st.threshold ? st.polarity : -st.polarity;
    s += alphas[t] * h;
  }
  return s;
}

namespace {

constexpr double kMinError = 1e-10;

struct StumpFit {
  Stump stump;
  double error = INFINITY;
};

// Exhaustive stump search. Thresholds sit below the smallest value and at
// midpoints between distinct sorted values.
StumpFit best_stump(const Eigen::MatrixXd& z, const std::vector<int>& sign,
                    const std::vector<double>& w,
                    const std::vector<std::vector<Eigen::Index>>& order) {
  StumpFit best;
  const Eigen::Index n = z.rows();
  double pos_total = 0.0, neg_total = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) (sign[static_cast<std::size_t>(i)] > 0 ? pos_total : neg_total) += w[static_cast<std::size_t>(i)];

  for (Eigen::Index f = 0; f < z.cols(); ++f) {
    const auto& ord = order[static_cast<std::size_t>(f)];
    double pos_left = 0.0, neg_left = 0.0;
    auto consider = [&](double threshold) {
      // polarity +1 predicts +1 on the right: errors are left positives + right negatives.
      const double err_plus = pos_left + (neg_total - neg_left);
      const double err_minus = neg_left + (pos_total - pos_left);
      if (err_plus < best.error) best = {{static_cast<int>(f), threshold, 1}, err_plus};
      if (err_minus < best.error) best = {{static_cast<int>(f), threshold, -1}, err_minus};
    };
    consider(z(ord.front(), f) - 1.0);
    for (std::size_t j = 0; j < ord.size(); ++j) {
      const auto i = static_cast<std::size_t>(ord[j]);
      (sign[i] > 0 ? pos_left : neg_left) += w[i];
      if (j + 1 < ord.size()) {
        const double a = z(ord[j], f);
        const double b = z(ord[j + 1], f);
        if (b > a) consider(0.5 * (a + b));
      }
    }
  }
  return best;
}

BoostedMachine boost(const Eigen::MatrixXd& z, const std::vector<int>& sign, int n_stumps,
                     const std::vector<std::vector<Eigen::Index>>& order, int positive_class) {
  const auto n = static_cast<std::size_t>(z.rows());
  BoostedMachine machine;
  machine.positive_class = positive_class;
  std::vector<double> w(n, 1.0 / static_cast<double>(n));
  for (int t = 0; t < n_stumps; ++t) {
    const StumpFit fit = best_stump(z, sign, w, order);
    const double raw_error = fit.error;
    if (raw_error >= 0.5) break;
    const double eps = std::clamp(raw_error, kMinError, 1.0 - kMinError);
    const double alpha = 0.5 * std::log((1.0 - eps) / eps);
    machine.stumps.push_back(fit.stump);
    machine.alphas.push_back(alpha);
    if (raw_error <= 0.0) break;  // perfect split; further rounds would repeat it
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const int h = z(static_cast<Eigen::Index>(i), fit.stump.feature) > fit.stump.threshold
                        ? fit.stump.polarity
                        : -fit.stump.polarity;
      w[i] *= std::exp(-alpha * sign[i] * h);
      total += w[i];
    }
    for (double& v : w) v /= total;
  }
  return machine;
}

}  // namespace

TrainedModel fit_adaboost(const Eigen::MatrixXd& x, const Labels& y, int n_stumps) {
  detail::check_training_shape(x, y, "fit_adaboost");
  if (x.rows() < 2) throw InvalidArgument("fit_adaboost: need at least 2 samples");
  if (n_stumps < 1) throw InvalidArgument("fit_adaboost: n_stumps must be >= 1");
  TrainedModel model;
  model.kind = ModelKind::AdaBoost;
  model.classes = detail::sorted_classes(y);
  if (model.classes.size() < 2) throw InvalidArgument("fit_adaboost: single-class input");
  model.scaler = fit_scaler(x);
  const Eigen::MatrixXd z = model.scaler.apply(x);
  const auto idx = detail::class_indices(y, model.classes);

  std::vector<std::vector<Eigen::Index>> order(static_cast<std::size_t>(z.cols()));
  for (Eigen::Index f = 0; f < z.cols(); ++f) {
    auto& ord = order[static_cast<std::size_t>(f)];
    ord.resize(static_cast<std::size_t>(z.rows()));
    std::iota(ord.begin(), ord.end(), Eigen::Index{0});
    std::stable_sort(ord.begin(), ord.end(), [&](Eigen::Index a, Eigen::Index b) { return z(a, f) < z(b, f); });
  }

  AdaBoostParams params;
  params.n_stumps = n_stumps;
  const int k = static_cast<int>(model.classes.size());
  const int first = k == 2 ? 1 : 0;
  for (int c = first; c < k; ++c) {
    std::vector<int> sign(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) sign[i] = idx[i] == c ? 1 : -1;
    params.machines.push_back(boost(z, sign, n_stumps, order, c));
  }
  model.params = std::move(params);
  return model;
}

}  // namespace loadsense
