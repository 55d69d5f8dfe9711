#include <algorithm>
#include <cmath>

#include "loadsense/eval.hpp"

namespace loadsense {

SplitPlan make_split_plan(std::vector<std::string> ids, int k, std::uint64_t seed) {
  if (k < 2) throw InvalidArgument("make_split_plan: k must be >= 2");
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  if (ids.size() < static_cast<std::size_t>(k))
    throw InvalidArgument("make_split_plan: " + std::to_string(ids.size()) +
                          " participants is fewer than k = " + std::to_string(k));
  auto rng = derived_stream(seed, Stream::Split);
  std::shuffle(ids.begin(), ids.end(), rng);

  SplitPlan plan;
  plan.seed = seed;
  for (int fold = 0; fold < k; ++fold) {
    Fold f;
    std::vector<std::string> rest;
    for (std::size_t p = 0; p < ids.size(); ++p)
      (static_cast<int>(p % static_cast<std::size_t>(k)) == fold ? f.test : rest).push_back(ids[p]);
    const std::size_t n_val = (rest.size() + 2) / 3;
    f.validation.assign(rest.begin(), rest.begin() + static_cast<std::ptrdiff_t>(n_val));
    f.train.assign(rest.begin() + static_cast<std::ptrdiff_t>(n_val), rest.end());
    plan.folds.push_back(std::move(f));
  }
  return plan;
}

std::string_view display_name(FeatureSubset s) {
  switch (s) {
    case FeatureSubset::All: return "All Features";
    case FeatureSubset::EyeDrive: return "Eye & Drive";
    case FeatureSubset::HeartEye: return "Heart & Eye";
    case FeatureSubset::HeartDrive: return "Heart & Drive";
    case FeatureSubset::HeartAlone: return "Heart alone";
  }
  return "?";
}

std::string_view key_name(FeatureSubset s) {
  switch (s) {
    case FeatureSubset::All: return "all";
    case FeatureSubset::EyeDrive: return "eye_drive";
    case FeatureSubset::HeartEye: return "heart_eye";
    case FeatureSubset::HeartDrive: return "heart_drive";
    case FeatureSubset::HeartAlone: return "heart";
  }
  return "?";
}

std::optional<FeatureSubset> parse_subset(std::string_view key) {
  for (FeatureSubset s : kAllSubsets)
    if (key == key_name(s)) return s;
  return std::nullopt;
}

std::vector<Feature> subset_features(FeatureSubset s) {
  const std::vector<Feature> heart{Feature::HrMean, Feature::HrMin, Feature::HrMax, Feature::HrStd,
                                   Feature::HrvRmssd};
  const std::vector<Feature> eye{Feature::LhipaLeft, Feature::LhipaRight};
  const std::vector<Feature> drive{Feature::DriveAvgDev};
  auto join = [](std::initializer_list<const std::vector<Feature>*> parts) {
    std::vector<Feature> out;
    for (const auto* p : parts) out.insert(out.end(), p->begin(), p->end());
    return out;
  };
  switch (s) {
    case FeatureSubset::All: return join({&heart, &eye, &drive});
    case FeatureSubset::EyeDrive: return join({&eye, &drive});
    case FeatureSubset::HeartEye: return join({&heart, &eye});
    case FeatureSubset::HeartDrive: return join({&heart, &drive});
    case FeatureSubset::HeartAlone: return heart;
  }
  return {};
}

std::string_view to_string(ClassScheme s) { return s == ClassScheme::Binary ? "binary" : "multi"; }

std::optional<ClassScheme> parse_scheme(std::string_view text) {
  if (text == "binary") return ClassScheme::Binary;
  if (text == "multi") return ClassScheme::Multi;
  return std::nullopt;
}

}  // namespace loadsense
