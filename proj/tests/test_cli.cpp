#include <gtest/gtest.h>

#include <map>
#include <sstream>

#include "cli.hpp"
#include "loadsense/eval.hpp"
#include "test_util.hpp"

using namespace loadsense;
using loadsense::testing::slurp;
using loadsense::testing::TempDir;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

/// Relative path -> contents for every file under root.
std::map<std::string, std::string> snapshot(const fs::path& root) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(root))
    if (e.is_regular_file()) files[fs::relative(e.path(), root).string()] = slurp(e.path());
  return files;
}

class Cli : public ::testing::Test {
protected:
  static void SetUpTestSuite() {
    dir_ = new TempDir("cli");
    const auto r = run({"synth", "--out", dataset().string(), "--participants", "10", "--seed", "3"});
    ASSERT_EQ(r.code, 0) << r.err;
  }
  static void TearDownTestSuite() {
    delete dir_;
    dir_ = nullptr;
  }
  static fs::path dataset() { return dir_->path() / "data"; }
  static fs::path out(const std::string& name) { return dir_->path() / name; }

  static TempDir* dir_;
};

TempDir* Cli::dir_ = nullptr;

}  // namespace

TEST(CliUsage, MissingSubcommandOrFlags) {
  EXPECT_EQ(run({}).code, kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(run({"evaluate", "--dataset", "x", "--out", "y", "--bogus"}).code, kExitUsage);
  EXPECT_EQ(run({"synth"}).code, kExitUsage);
  EXPECT_EQ(run({"synth", "--out", "x", "--threads", "0"}).code, kExitUsage);
  EXPECT_EQ(run({"--help"}).code, kExitOk);
}

TEST_F(Cli, EvaluateWithoutTaskIsUsageError) {
  const auto r = run({"evaluate", "--dataset", dataset().string(), "--out", out("no_task").string()});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("--task"), std::string::npos);
  EXPECT_EQ(run({"evaluate", "--dataset", dataset().string(), "--out", out("bad_task").string(), "--task",
                 "stroop"})
                .code,
            kExitUsage);
}

TEST_F(Cli, UnreadableDatasetIsDataError) {
  TempDir empty("cli_empty");
  auto r = run({"features", "--dataset", (empty.path() / "missing").string(), "--out", out("f_missing").string()});
  EXPECT_EQ(r.code, kExitDataError);
  r = run({"features", "--dataset", empty.path().string(), "--out", out("f_empty").string()});
  EXPECT_EQ(r.code, kExitDataError);
  EXPECT_NE(r.err.find("no segments found"), std::string::npos);
}

TEST_F(Cli, SynthRefusesNonEmptyOutput) {
  EXPECT_EQ(run({"synth", "--out", dataset().string(), "--participants", "2"}).code, kExitUsage);
  EXPECT_EQ(run({"features", "--dataset", dataset().string(), "--out", (dataset() / "inner").string()}).code,
            kExitUsage);
}

TEST_F(Cli, EvaluateHappyPath) {
  const auto r = run({"evaluate", "--task", "nback", "--scheme", "binary", "--seed", "7", "--dataset",
                      dataset().string(), "--out", out("eval").string(), "--threads", "4"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto text = slurp(out("eval") / "report_nback_binary.txt");
  const auto csv = slurp(out("eval") / "report_nback_binary.csv");
  EXPECT_NE(text.find("50%"), std::string::npos);
  EXPECT_NE(text.find("seed=7"), std::string::npos);
  EXPECT_NE(csv.find("seed=7"), std::string::npos);
  EXPECT_NE(csv.find("format_version=1"), std::string::npos);
  const auto report = parse_report_csv(csv);
  EXPECT_EQ(report.cells.size(), 4u);
  EXPECT_TRUE(fs::exists(out("eval") / "run.json"));

  const auto rendered = run({"report", "--input", (out("eval") / "report_nback_binary.csv").string()});
  ASSERT_EQ(rendered.code, kExitOk) << rendered.err;
  EXPECT_NE(rendered.out.find("Heart alone"), std::string::npos);
}

TEST_F(Cli, EveryCommandIsDeterministicAcrossThreads) {
  const std::string data = dataset().string();
  const std::vector<std::vector<std::string>> commands{
      {"validate", "--dataset", data},
      {"features", "--dataset", data},
      {"stats", "--dataset", data},
      {"train", "--dataset", data, "--task", "nback", "--scheme", "multi"},
      {"evaluate", "--dataset", data, "--task", "visual_search", "--scheme", "multi", "--subset", "heart",
       "--subset", "all"},
  };
  const auto before = snapshot(dataset());
  for (std::size_t i = 0; i < commands.size(); ++i) {
    std::map<std::string, std::string> outputs[2];
    int t = 0;
    for (const char* threads : {"1", "8"}) {
      auto args = commands[i];
      const auto dir = out("det_" + std::to_string(i) + "_" + threads);
      args.insert(args.end(), {"--out", dir.string(), "--threads", threads, "--seed", "5"});
      const auto r = run(args);
      ASSERT_EQ(r.code, kExitOk) << commands[i][0] << ": " << r.err;
      outputs[t++] = snapshot(dir);
    }
    EXPECT_FALSE(outputs[0].empty());
    EXPECT_EQ(outputs[0], outputs[1]) << commands[i][0];
  }
  EXPECT_EQ(snapshot(dataset()), before);
}

TEST_F(Cli, SynthIsDeterministicAcrossThreads) {
  const auto a = run({"synth", "--out", out("s1").string(), "--participants", "2", "--seed", "4", "--threads", "1"});
  const auto b = run({"synth", "--out", out("s8").string(), "--participants", "2", "--seed", "4", "--threads", "8"});
  ASSERT_EQ(a.code, 0);
  ASSERT_EQ(b.code, 0);
  EXPECT_EQ(snapshot(out("s1")), snapshot(out("s8")));
}

TEST_F(Cli, SynthConfigFile) {
  const auto cfg = out("gen.cfg");
  std::ofstream(cfg) << "nback.easy.hr_bpm_mean = 65\n";
  auto r = run({"synth", "--out", out("s_cfg").string(), "--participants", "2", "--config", cfg.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(slurp(out("s_cfg") / "generator.cfg").find("nback.easy.hr_bpm_mean = 65"), std::string::npos);
  std::ofstream(cfg) << "nback.easy.bogus = 65\n";
  r = run({"synth", "--out", out("s_bad").string(), "--participants", "2", "--config", cfg.string()});
  EXPECT_EQ(r.code, kExitDataError);
}

TEST_F(Cli, SeedFromEnvironment) {
  ::setenv("LOADSENSE_SEED", "21", 1);
  const auto r = run({"features", "--dataset", dataset().string(), "--out", out("env_seed").string()});
  ::unsetenv("LOADSENSE_SEED");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(slurp(out("env_seed") / "features.csv").find("seed=21"), std::string::npos);
}
