#include <gtest/gtest.h>

#include <chrono>
#include <cmath>
#include <thread>

#include "loadsense/dataset_io.hpp"
#include "loadsense/features.hpp"
#include "loadsense/stats.hpp"
#include "loadsense/stats_report.hpp"
#include "loadsense/synth.hpp"
#include "test_util.hpp"

using namespace loadsense;
namespace fs = std::filesystem;

namespace {

unsigned threads() { return std::max(2u, std::thread::hardware_concurrency()); }

struct Generated {
  Dataset dataset;
  FeatureTable features;
};

const Generated& full_dataset() {
  static const Generated g = [] {
    GeneratorConfig cfg;
    cfg.seed = 7;
    Generated out;
    out.dataset = generate_dataset(cfg, threads());
    out.features = featurize_dataset(out.dataset, {}, threads());
    return out;
  }();
  return g;
}

const Generated& null_dataset() {
  static const Generated g = [] {
    GeneratorConfig cfg;
    cfg.seed = 7;
    Generated out;
    out.dataset = generate_null_dataset(cfg, threads());
    out.features = featurize_dataset(out.dataset, {}, threads());
    return out;
  }();
  return g;
}

/// Paired differences between two levels of one task for one feature.
std::vector<double> level_differences(const FeatureTable& t, TaskKind task, LoadLevel a, LoadLevel b,
                                      Feature f) {
  std::map<std::string, std::array<double, 3>> by_participant;
  for (const auto& row : t)
    if (row.task == task) by_participant[row.participant][static_cast<std::size_t>(level_code(row.level))] = row.features[f];
  std::vector<double> d;
  for (const auto& [id, v] : by_participant)
    d.push_back(v[static_cast<std::size_t>(level_code(b))] - v[static_cast<std::size_t>(level_code(a))]);
  return d;
}

}  // namespace

TEST(Synth, DefaultsAreTheReferenceTable) {
  const GeneratorConfig cfg;
  EXPECT_EQ(cfg.at(TaskKind::NBack, LoadLevel::Easy).hr_bpm.mean, 77.49);
  EXPECT_EQ(cfg.at(TaskKind::NBack, LoadLevel::Easy).hr_bpm.sd, 12.60);
  EXPECT_EQ(cfg.at(TaskKind::NBack, LoadLevel::Hard).rmssd_ms.mean, 30.34);
  EXPECT_EQ(cfg.at(TaskKind::VisualSearch, LoadLevel::Medium).drive_dev_m.mean, 0.24);
  EXPECT_EQ(cfg.n_participants, 45);
  EXPECT_NO_THROW(cfg.validate());
}

TEST(Synth, StructureAndValidity) {
  const auto& ds = full_dataset().dataset;
  EXPECT_EQ(ds.size(), 270u);
  EXPECT_EQ(ds.participants().size(), 45u);
  EXPECT_EQ(ds.participants().begin()->first, "P001");
  for (const auto& [id, idx] : ds.participants()) EXPECT_EQ(idx.size(), 6u) << id;
  for (const auto& seg : ds.segments()) {
    const auto issues = validate_segment(seg);
    EXPECT_FALSE(has_errors(issues)) << seg.participant_id << (issues.empty() ? "" : issues[0].message);
    EXPECT_GE(seg.duration_s, 120.0);
    EXPECT_LE(seg.duration_s, 160.0);
  }
  EXPECT_TRUE(ds.incomplete_nback_participants().empty());
  EXPECT_EQ(full_dataset().features.size(), 270u);
}

TEST(Synth, DeterministicAcrossRunsAndThreads) {
  GeneratorConfig cfg;
  cfg.n_participants = 3;
  cfg.seed = 99;
  const auto a = generate_dataset(cfg, 1);
  const auto b = generate_dataset(cfg, 8);
  EXPECT_EQ(a, b);
  cfg.seed = 100;
  EXPECT_FALSE(generate_dataset(cfg, 1) == a);

  loadsense::testing::TempDir da("synth_a");
  loadsense::testing::TempDir db("synth_b");
  write_dataset(da.path(), a);
  write_dataset(db.path(), b);
  std::size_t files = 0;
  for (const auto& entry : fs::recursive_directory_iterator(da.path())) {
    if (!entry.is_regular_file()) continue;
    const auto rel = fs::relative(entry.path(), da.path());
    ASSERT_TRUE(fs::exists(db.path() / rel)) << rel;
    EXPECT_EQ(loadsense::testing::slurp(entry.path()), loadsense::testing::slurp(db.path() / rel)) << rel;
    ++files;
  }
  EXPECT_EQ(files, 3u * 6u * 6u);
}

TEST(Synth, ParticipantPrefixIsStable) {
  // adding participants must not change the ones already there
  GeneratorConfig cfg;
  cfg.n_participants = 2;
  const auto small = generate_dataset(cfg);
  cfg.n_participants = 4;
  const auto large = generate_dataset(cfg);
  for (const auto& seg : small.segments())
    EXPECT_EQ(seg, *large.find(seg.participant_id, seg.task, seg.level));
}

TEST(Synth, HeartMeansMatchTargets) {
  const auto table = descriptive_table(full_dataset().features);
  const GeneratorConfig cfg;
  for (TaskKind task : kAllTasks)
    for (LoadLevel level : kAllLevels) {
      const auto c = condition_index(task, level);
      const auto& t = cfg.at(task, level);
      const auto& hr = table.cells[0][c];
      EXPECT_NEAR(*hr.mean, t.hr_bpm.mean, 3.0 * t.hr_bpm.sd / std::sqrt(45.0)) << condition_label(c);
      const auto& rm = table.cells[1][c];
      EXPECT_NEAR(*rm.mean, t.rmssd_ms.mean, 3.0 * t.rmssd_ms.sd / std::sqrt(45.0)) << condition_label(c);
      const auto& dr = table.cells[4][c];
      EXPECT_NEAR(*dr.mean, t.drive_dev_m.mean, 3.0 * t.drive_dev_m.sd / std::sqrt(45.0)) << condition_label(c);
    }
  // nback easy in particular
  EXPECT_NEAR(*table.cells[0][0].mean, 77.49, 3.0 * 12.60 / std::sqrt(45.0));
}

TEST(Synth, NBackEffectDirections) {
  const auto& t = full_dataset().features;
  const auto hr = level_differences(t, TaskKind::NBack, LoadLevel::Easy, LoadLevel::Hard, Feature::HrMean);
  const auto rm = level_differences(t, TaskKind::NBack, LoadLevel::Easy, LoadLevel::Hard, Feature::HrvRmssd);
  const auto dr = level_differences(t, TaskKind::NBack, LoadLevel::Easy, LoadLevel::Hard, Feature::DriveAvgDev);
  EXPECT_GT(*mean_std(hr).mean, 0.0);
  EXPECT_LT(*mean_std(rm).mean, 0.0);
  EXPECT_GT(*mean_std(dr).mean, 0.0);
  EXPECT_LT(paired_t(std::vector<double>(hr.size(), 0.0), hr).p_value, 0.001);
}

TEST(Synth, HeartReliabilityHigh) {
  std::vector<ConditionMatrix> ms;
  for (Dimension d : kAllDimensions) ms.push_back(condition_matrix(full_dataset().features, d));
  const auto screen = reliability_screen(ms);
  EXPECT_TRUE(screen.is_retained(Dimension::Hr));
  EXPECT_TRUE(screen.is_retained(Dimension::HrvRmssd));
  EXPECT_FALSE(screen.is_retained(Dimension::LhipaLeft));
  EXPECT_FALSE(screen.is_retained(Dimension::LhipaRight));
}

TEST(Synth, ManipulationChecks) {
  const auto checks = manipulation_checks(full_dataset().dataset);
  ASSERT_EQ(checks.size(), 4u);
  for (const auto& c : checks) {
    ASSERT_TRUE(c.first_stats.mean && c.second_stats.mean);
    if (c.task == TaskKind::NBack)
      EXPECT_GT(*c.first_stats.mean, *c.second_stats.mean) << c.measure;
    else
      EXPECT_LT(*c.first_stats.mean, *c.second_stats.mean) << c.measure;
  }
}

TEST(Synth, NullDatasetHasNoLevelEffects) {
  const auto& t = null_dataset().features;
  for (TaskKind task : kAllTasks)
    for (auto [a, b] : {std::pair{LoadLevel::Easy, LoadLevel::Medium}, std::pair{LoadLevel::Medium, LoadLevel::Hard},
                        std::pair{LoadLevel::Easy, LoadLevel::Hard}})
      for (Feature f : {Feature::HrMean, Feature::HrvRmssd, Feature::DriveAvgDev}) {
        const auto d = level_differences(t, task, a, b, f);
        const auto ms = mean_std(d);
        const double se = *ms.std / std::sqrt(static_cast<double>(ms.n));
        EXPECT_LT(std::abs(*ms.mean), 2.0 * se)
            << to_string(task) << " " << to_string(a) << "-" << to_string(b) << " "
            << kFeatureNames[index_of(f)];
      }
  const GeneratorConfig flat = without_level_effects(GeneratorConfig{});
  for (TaskKind task : kAllTasks)
    EXPECT_EQ(flat.at(task, LoadLevel::Easy).hr_bpm.mean, flat.at(task, LoadLevel::Hard).hr_bpm.mean);
}

TEST(Synth, SmallConfigIsFast) {
  GeneratorConfig cfg;
  cfg.n_participants = 5;
  const auto start = std::chrono::steady_clock::now();
  const auto ds = generate_null_dataset(cfg, threads());
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  EXPECT_EQ(ds.size(), 30u);
  EXPECT_LT(secs, 1.0);
}

TEST(GeneratorConfig, WriteParseRoundTrip) {
  GeneratorConfig cfg;
  cfg.seed = 123;
  cfg.n_participants = 12;
  cfg.at(TaskKind::VisualSearch, LoadLevel::Hard).hr_bpm.mean = 81.125;
  cfg.pupil.noise_mm = 0.045;
  const auto text = write_generator_config(cfg);
  const auto back = parse_generator_config(text);
  EXPECT_EQ(write_generator_config(back), text);
  EXPECT_EQ(back.seed, 123u);
  EXPECT_EQ(back.n_participants, 12);
  EXPECT_EQ(back.at(TaskKind::VisualSearch, LoadLevel::Hard).hr_bpm.mean, 81.125);
}

TEST(GeneratorConfig, PartialOverridesAndErrors) {
  const auto cfg = parse_generator_config("# comment\n\nnback.easy.hr_bpm_mean = 70  # inline\nseed=3\n");
  EXPECT_EQ(cfg.at(TaskKind::NBack, LoadLevel::Easy).hr_bpm.mean, 70.0);
  EXPECT_EQ(cfg.seed, 3u);
  EXPECT_EQ(cfg.at(TaskKind::NBack, LoadLevel::Medium).hr_bpm.mean, 82.54);
  EXPECT_THROW(parse_generator_config("nback.extreme.hr_bpm_mean = 1\n"), InvalidArgument);
  EXPECT_THROW(parse_generator_config("seed = seven\n"), InvalidArgument);
  EXPECT_THROW(parse_generator_config("no equals sign\n"), InvalidArgument);
  EXPECT_THROW(parse_generator_config("nback.easy.hr_bpm_sd = -1\n"), InvalidArgument);
  EXPECT_THROW(parse_generator_config("max_duration_s = 200\n"), InvalidArgument);
}
