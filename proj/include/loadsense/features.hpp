#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "loadsense/cardiac.hpp"
#include "loadsense/driving.hpp"
#include "loadsense/pupil.hpp"
#include "loadsense/types.hpp"

namespace loadsense {

struct FeatureConfig {
  RrPolicy rr;
  PupilPolicy pupil;
  DrivingPolicy driving;
};

struct FeatureRow {
  std::string participant;
  TaskKind task = TaskKind::NBack;
  LoadLevel level = LoadLevel::Easy;
  FeatureVector features;
  /// Why each missing feature could not be computed.
  std::vector<std::string> notes;
};

using FeatureTable = std::vector<FeatureRow>;

/// All eight features of one segment. Channels that cannot be computed are
/// marked missing; this never throws on bad data.
FeatureRow featurize_segment(const SessionSegment& seg, const FeatureConfig& config = {});

/// One row per segment, in the dataset's canonical order.
FeatureTable featurize_dataset(const Dataset& dataset, const FeatureConfig& config = {},
                               unsigned threads = 1);

/// CSV with header participant,task,level,<8 feature names>; missing = "NA".
void write_feature_table(const std::filesystem::path& path, const FeatureTable& table,
                         const std::string& header_comment = {});
FeatureTable read_feature_table(const std::filesystem::path& path);

}  // namespace loadsense
