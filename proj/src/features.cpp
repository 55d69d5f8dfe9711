#include "loadsense/features.hpp"

#include <fstream>

#include "csv.hpp"
#include "loadsense/dataset_io.hpp"
#include "loadsense/parallel.hpp"

namespace loadsense {

namespace {

void set_lhipa(FeatureRow& row, Feature feature, const std::vector<PupilSample>& samples,
               const PupilPolicy& policy) {
  const std::string name(kFeatureNames[index_of(feature)]);
  if (samples.empty()) {
    row.features.mark_missing(feature);
    row.notes.push_back(name + ": no pupil data");
    return;
  }
  const auto pre = preprocess_pupil(samples, policy);
  if (!pre.signal) {
    row.features.mark_missing(feature);
    row.notes.push_back(name + ": " + pre.missing_reason);
    return;
  }
  try {
    const auto res = lhipa(*pre.signal);
    row.features.set(feature, res.value);
    if (res.warning) row.notes.push_back(name + ": " + *res.warning);
  } catch (const std::exception& e) {
    row.features.mark_missing(feature);
    row.notes.push_back(name + ": " + e.what());
  }
}

}  // namespace

FeatureRow featurize_segment(const SessionSegment& seg, const FeatureConfig& config) {
  FeatureRow row;
  row.participant = seg.participant_id;
  row.task = seg.task;
  row.level = seg.level;

  constexpr std::array heart{Feature::HrMean, Feature::HrMin, Feature::HrMax, Feature::HrStd,
                             Feature::HrvRmssd};
  try {
    if (seg.rr_intervals.empty()) throw DataError("no RR intervals");
    std::vector<double> rr;
    rr.reserve(seg.rr_intervals.size());
    for (const auto& s : seg.rr_intervals) rr.push_back(s.rr_ms);
    const auto c = cardiac_features(rr, config.rr);
    row.features.set(Feature::HrMean, c.hr_mean);
    row.features.set(Feature::HrMin, c.hr_min);
    row.features.set(Feature::HrMax, c.hr_max);
    row.features.set(Feature::HrStd, c.hr_std);
    row.features.set(Feature::HrvRmssd, c.rmssd);
  } catch (const std::exception& e) {
    for (Feature f : heart) row.features.mark_missing(f);
    row.notes.push_back(std::string("heart: ") + e.what());
  }

  set_lhipa(row, Feature::LhipaLeft, seg.pupil_left, config.pupil);
  set_lhipa(row, Feature::LhipaRight, seg.pupil_right, config.pupil);

  try {
    if (seg.driving.empty()) throw DataError("no driving data");
    row.features.set(Feature::DriveAvgDev, average_deviation(seg.driving, config.driving));
  } catch (const std::exception& e) {
    row.features.mark_missing(Feature::DriveAvgDev);
    row.notes.push_back(std::string("drive_avg_dev: ") + e.what());
  }
  return row;
}

FeatureTable featurize_dataset(const Dataset& dataset, const FeatureConfig& config, unsigned threads) {
  FeatureTable table(dataset.size());
  parallel_for(dataset.size(), threads,
               [&](std::size_t i) { table[i] = featurize_segment(dataset.segments()[i], config); });
  return table;
}

void write_feature_table(const std::filesystem::path& path, const FeatureTable& table,
                         const std::string& header_comment) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  if (!header_comment.empty()) out << "# " << header_comment << "\n";
  out << "participant,task,level";
  for (auto name : kFeatureNames) out << "," << name;
  out << "\n";
  for (const auto& row : table) {
    out << row.participant << "," << to_string(row.task) << "," << to_string(row.level);
    for (std::size_t i = 0; i < kFeatureCount; ++i)
      out << "," << (row.features.missing.test(i) ? std::string("NA") : format_double(row.features.values[i]));
    out << "\n";
  }
  if (!out) throw DataError("cannot write " + path.string());
}

FeatureTable read_feature_table(const std::filesystem::path& path) {
  std::string header = "participant,task,level";
  for (auto name : kFeatureNames) header += "," + std::string(name);
  detail::CsvTable csv(path, header);
  FeatureTable table;
  for (const auto& r : csv.rows()) {
    FeatureRow row;
    row.participant = std::string(r.fields[0]);
    auto task = parse_task(r.fields[1]);
    auto level = parse_level(r.fields[2]);
    if (!task || !level)
      throw DataError(path.string() + ":" + std::to_string(r.line_no) + ": invalid task or level");
    row.task = *task;
    row.level = *level;
    for (std::size_t i = 0; i < kFeatureCount; ++i) {
      const auto feature = static_cast<Feature>(i);
      if (r.fields[3 + i] == "NA")
        row.features.mark_missing(feature);
      else
        row.features.set(feature, csv.number(r, 3 + i, kFeatureNames[i]));
    }
    table.push_back(std::move(row));
  }
  return table;
}

}  // namespace loadsense
