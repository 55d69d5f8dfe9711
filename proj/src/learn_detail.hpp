#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "loadsense/classifiers.hpp"
#include "loadsense/types.hpp"

namespace loadsense::detail {

inline std::vector<int> sorted_classes(const Labels& y) {
  std::vector<int> classes(y.begin(), y.end());
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
  return classes;
}

inline std::vector<int> class_indices(const Labels& y, const std::vector<int>& classes) {
  std::vector<int> idx(y.size());
  for (std::size_t i = 0; i < y.size(); ++i)
    idx[i] = static_cast<int>(std::lower_bound(classes.begin(), classes.end(), y[i]) - classes.begin());
  return idx;
}

inline void check_training_shape(const Eigen::MatrixXd& x, const Labels& y, const char* who) {
  if (x.rows() == 0) throw InvalidArgument(std::string(who) + ": empty training set");
  if (static_cast<std::size_t>(x.rows()) != y.size())
    throw InvalidArgument(std::string(who) + ": row count and label count differ");
}

}  // namespace loadsense::detail
