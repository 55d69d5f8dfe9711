#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "loadsense/distributions.hpp"
#include "loadsense/stats.hpp"
#include "loadsense/stats_report.hpp"
#include "oracles.hpp"

using namespace loadsense;
using V = std::vector<double>;

TEST(Pearson, Examples) {
  const V x{1, 2, 3, 4, 5};
  V neg;
  for (double v : x) neg.push_back(-v);
  EXPECT_DOUBLE_EQ(pearson(x, x).statistic, 1.0);
  EXPECT_DOUBLE_EQ(pearson(x, neg).statistic, -1.0);
  const auto r = pearson(V{1, 2, 3}, V{1, 2, 4});
  EXPECT_NEAR(r.statistic, 0.9820, 1e-4);
  EXPECT_EQ(r.df, 1.0);
  const auto flat = pearson(V{1, 1, 1}, V{1, 2, 3});
  EXPECT_TRUE(flat.degenerate);
  EXPECT_EQ(flat.p_value, 1.0);
}

TEST(Pearson, MatchesOracle) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> z;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 3 + rng() % 40;
    const double rho = std::uniform_real_distribution<double>(-0.95, 0.95)(rng);
    V x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = z(rng);
      y[i] = rho * x[i] + std::sqrt(1 - rho * rho) * z(rng);
    }
    const auto got = pearson(x, y);
    const auto want = oracle::pearson(x, y);
    EXPECT_NEAR(got.statistic, want.statistic, 1e-12);
    EXPECT_NEAR(got.p_value, want.p, 1e-10);
  }
}

TEST(PairedT, Examples) {
  const V x{3, 4, 5};
  auto r = paired_t(x, x);
  EXPECT_EQ(r.statistic, 0.0);
  EXPECT_EQ(r.p_value, 1.0);

  r = paired_t(V{1, 2, 3}, V{0, 0, 0});
  EXPECT_NEAR(r.statistic, 3.4641, 1e-4);
  EXPECT_EQ(r.df, 2.0);
  EXPECT_NEAR(r.p_value, 0.0742, 1e-4);
  const double t = r.statistic;
  EXPECT_NEAR(r.p_value, 1.0 - t / std::sqrt(2.0 + t * t), 1e-12);
}

TEST(PairedT, MatchesOracle) {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> z;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + rng() % 45;
    V x(n), y(n);
    const double shift = 0.5 * z(rng);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = 70 + 10 * z(rng);
      y[i] = x[i] + shift + z(rng);
    }
    const auto got = paired_t(x, y);
    const auto want = oracle::paired_t(x, y);
    EXPECT_NEAR(got.statistic, want.statistic, 1e-9 * std::max(1.0, std::abs(want.statistic)));
    EXPECT_NEAR(got.p_value, want.p, 1e-10);
  }
}

TEST(StudentT, ClosedFormsDf1Df2) {
  for (double t = -30; t <= 30; t += 0.37) {
    EXPECT_NEAR(student_t_cdf(t, 1.0), 0.5 + std::atan(t) / std::numbers::pi, 1e-10) << t;
    EXPECT_NEAR(student_t_cdf(t, 2.0), 0.5 * (1 + t / std::sqrt(2 + t * t)), 1e-10) << t;
  }
}

TEST(StudentT, SeriesForLargerDf) {
  for (int df : {3, 5, 10, 30, 44}) {
    for (double t = 0.0; t <= 8.0; t += 0.125)
      EXPECT_NEAR(student_t_two_tailed(t, static_cast<double>(df)), oracle::t_two_tailed_series(t, df),
                  1e-12)
          << "df=" << df << " t=" << t;
  }
}

TEST(StudentT, Symmetry) {
  for (double t : {0.1, 1.0, 2.5, 7.0}) {
    EXPECT_NEAR(student_t_cdf(-t, 7.0), 1.0 - student_t_cdf(t, 7.0), 1e-14);
  }
  EXPECT_EQ(student_t_cdf(0.0, 9.0), 0.5);
  EXPECT_EQ(student_t_two_tailed(std::numeric_limits<double>::infinity(), 3.0), 0.0);
  EXPECT_THROW(student_t_two_tailed(1.0, 0.0), std::invalid_argument);
}

TEST(IncompleteBeta, KnownValues) {
  EXPECT_NEAR(regularized_incomplete_beta(1.0, 1.0, 0.3), 0.3, 1e-14);
  EXPECT_NEAR(regularized_incomplete_beta(2.0, 1.0, 0.3), 0.09, 1e-14);
  EXPECT_NEAR(regularized_incomplete_beta(1.0, 3.0, 0.2), 1 - std::pow(0.8, 3), 1e-14);
  EXPECT_EQ(regularized_incomplete_beta(2.5, 1.5, 0.0), 0.0);
  EXPECT_EQ(regularized_incomplete_beta(2.5, 1.5, 1.0), 1.0);
}

TEST(Cronbach, Examples) {
  Eigen::MatrixXd same(4, 3);
  same << 1, 1, 1, 2, 2, 2, 5, 5, 5, 3, 3, 3;
  EXPECT_NEAR(cronbach_alpha(same).alpha, 1.0, 1e-12);

  Eigen::MatrixXd two(3, 2);
  two << 1, 1, 2, 2, 3, 4;
  EXPECT_NEAR(cronbach_alpha(two).alpha, 0.9474, 1e-4);

  Eigen::MatrixXd flat = Eigen::MatrixXd::Constant(4, 3, 2.0);
  EXPECT_TRUE(cronbach_alpha(flat).degenerate);
}

TEST(Cronbach, ListwiseDeletionAndOracle) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> z;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 5 + static_cast<int>(rng() % 30);
    const int k = 2 + static_cast<int>(rng() % 5);
    Eigen::MatrixXd m(n, k);
    for (int r = 0; r < n; ++r) {
      const double base = z(rng);
      for (int c = 0; c < k; ++c) m(r, c) = base + z(rng);
    }
    const auto want = oracle::cronbach_alpha(oracle::columns(m));
    EXPECT_NEAR(cronbach_alpha(m).alpha, want, 1e-9);
    Eigen::MatrixXd holes(n + 2, k);
    holes << m, Eigen::MatrixXd::Constant(2, k, 1.0);
    holes(n, 0) = std::nan("");
    holes(n + 1, k - 1) = std::nan("");
    const auto got = cronbach_alpha(holes);
    EXPECT_NEAR(got.alpha, want, 1e-9);
    EXPECT_EQ(got.n_complete, static_cast<std::size_t>(n));
  }
}

TEST(Reliability, EngineeredFixture) {
  const auto fixture = oracle::reliability_fixture();
  for (const auto& m : fixture) {
    const double a = oracle::cronbach_alpha(oracle::columns(m.values));
    if (m.dimension == Dimension::Hr || m.dimension == Dimension::HrvRmssd)
      EXPECT_GE(a, 0.9);
    else
      EXPECT_LE(a, 0.4);
  }
  const auto screen = reliability_screen(fixture);
  EXPECT_EQ(screen.retained, (std::vector<Dimension>{Dimension::Hr, Dimension::HrvRmssd}));
  EXPECT_EQ(screen.excluded, (std::vector<Dimension>{Dimension::LhipaRight, Dimension::LhipaLeft,
                                                     Dimension::Driving}));
  EXPECT_EQ(reliability_screen(fixture, -1.0).retained.size(), 5u);
}

TEST(Reliability, PerfectItemsRetained) {
  std::vector<ConditionMatrix> ms;
  for (Dimension d : kAllDimensions) {
    ConditionMatrix m;
    m.dimension = d;
    m.values.resize(5, 6);
    for (int r = 0; r < 5; ++r) m.values.row(r).setConstant(r * 1.5);
    ms.push_back(m);
  }
  EXPECT_EQ(reliability_screen(ms).retained.size(), 5u);
}

TEST(Stars, Thresholds) {
  EXPECT_EQ(significance_stars(0.0005), "**");
  EXPECT_EQ(significance_stars(0.001), "*");
  EXPECT_EQ(significance_stars(0.049), "*");
  EXPECT_EQ(significance_stars(0.05), "");
}

namespace {

FeatureTable hand_table() {
  // three participants, n-back easy and medium only
  FeatureTable t;
  const double hr[3][2] = {{70, 75}, {80, 82}, {60, 71}};
  const double rm[3][2] = {{40, 35}, {30, 31}, {55, 41}};
  const char* ids[3] = {"A", "B", "C"};
  for (int p = 0; p < 3; ++p)
    for (int l = 0; l < 2; ++l) {
      FeatureRow row;
      row.participant = ids[p];
      row.task = TaskKind::NBack;
      row.level = level_from_code(l);
      for (std::size_t f = 0; f < kFeatureCount; ++f) row.features.mark_missing(static_cast<Feature>(f));
      row.features.set(Feature::HrMean, hr[p][l]);
      row.features.set(Feature::HrvRmssd, rm[p][l]);
      t.push_back(row);
    }
  return t;
}

}  // namespace

TEST(Descriptives, HandFixture) {
  const auto table = descriptive_table(hand_table());
  ASSERT_EQ(table.rows.size(), 5u);
  EXPECT_EQ(table.rows[0], Dimension::Hr);
  const auto& easy = table.cells[0][0];
  EXPECT_NEAR(*easy.mean, 70.0, 1e-12);
  EXPECT_NEAR(*easy.std, 10.0, 1e-12);
  const auto& medium = table.cells[0][1];
  EXPECT_NEAR(*medium.mean, oracle::mean({75, 82, 71}), 1e-12);
  EXPECT_NEAR(*medium.std, std::sqrt(oracle::sample_var({75, 82, 71})), 1e-12);
  EXPECT_EQ(table.cells[0][2].n, 0u);
  EXPECT_FALSE(table.cells[0][2].mean.has_value());
  EXPECT_FALSE(table.cells[2][0].mean.has_value());
}

TEST(Descriptives, SingleParticipantHasNoStd) {
  auto t = hand_table();
  t.resize(2);
  const auto table = descriptive_table(t);
  EXPECT_TRUE(table.cells[0][0].mean.has_value());
  EXPECT_FALSE(table.cells[0][0].std.has_value());
  const auto text = render_descriptive_text(table);
  EXPECT_FALSE(text.empty());
}

TEST(Correlation, MatrixMatchesPairwisePearson) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> z;
  std::vector<ConditionMatrix> ms;
  for (Dimension d : {Dimension::Hr, Dimension::HrvRmssd}) {
    ConditionMatrix m;
    m.dimension = d;
    for (int p = 0; p < 20; ++p) m.participants.push_back("P" + std::to_string(p));
    m.values.resize(20, 6);
    for (int r = 0; r < 20; ++r)
      for (int c = 0; c < 6; ++c) m.values(r, c) = z(rng);
    ms.push_back(m);
  }
  ms[1].values.col(0) = 2.0 * ms[0].values.col(0).array() + 1.0;
  ms[0].values(3, 4) = std::nan("");

  const auto cm = correlation_matrix(ms);
  ASSERT_EQ(cm.r.rows(), 12);
  EXPECT_EQ(cm.labels.size(), 12u);
  for (Eigen::Index i = 0; i < 12; ++i) {
    EXPECT_EQ(cm.r(i, i), 1.0);
    for (Eigen::Index j = 0; j < 12; ++j) {
      if (i == j) continue;
      const auto& mi = ms[static_cast<std::size_t>(i / 6)].values;
      const auto& mj = ms[static_cast<std::size_t>(j / 6)].values;
      V x, y;
      for (int r = 0; r < 20; ++r)
        if (std::isfinite(mi(r, i % 6)) && std::isfinite(mj(r, j % 6))) {
          x.push_back(mi(r, i % 6));
          y.push_back(mj(r, j % 6));
        }
      const auto want = oracle::pearson(x, y);
      EXPECT_NEAR(cm.r(i, j), want.statistic, 1e-12);
      EXPECT_EQ(cm.n(i, j), static_cast<int>(x.size()));
      if (std::abs(want.statistic) < 1.0 - 1e-12) {
        EXPECT_NEAR(cm.p(i, j), want.p, 1e-10);
      }
    }
  }
  EXPECT_NEAR(cm.r(6, 0), 1.0, 1e-12);
  EXPECT_EQ(significance_stars(cm.p(6, 0)), "**");
  const auto text = render_correlation_text(cm, "all");
  EXPECT_NE(text.find("**"), std::string::npos);
}

TEST(Correlation, AveragedMatrix) {
  auto fixture = oracle::reliability_fixture(11);
  const auto cm = averaged_correlation_matrix(fixture);
  ASSERT_EQ(cm.r.rows(), 5);
  V a, b;
  for (Eigen::Index r = 0; r < fixture[0].values.rows(); ++r) {
    a.push_back(fixture[0].values.row(r).mean());
    b.push_back(fixture[1].values.row(r).mean());
  }
  EXPECT_NEAR(cm.r(0, 1), oracle::pearson(a, b).statistic, 1e-12);
}

TEST(ConditionMatrix, LayoutAndMissing) {
  const auto m = condition_matrix(hand_table(), Dimension::Hr);
  EXPECT_EQ(m.participants, (std::vector<std::string>{"A", "B", "C"}));
  EXPECT_EQ(m.values(2, 1), 71.0);
  EXPECT_TRUE(std::isnan(m.values(0, 2)));
  EXPECT_EQ(condition_index(TaskKind::VisualSearch, LoadLevel::Medium), 4u);
}
