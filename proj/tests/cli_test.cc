// Copyright 2026 The lmimd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <gtest/gtest.h>

#include "commands.h"
#include "lmimd/bandwidth.h"
#include "lmimd/scenario_json.h"
#include "lmimd/simulator.h"
#include "random_scenario.h"

namespace lmimd {
namespace {

namespace fs = std::filesystem;

const fs::path kScenarios = LMIMD_SCENARIO_DIR;

std::string Slurp(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    root_ = fs::temp_directory_path() /
            ("lmimd_cli_" + std::string(::testing::UnitTest::GetInstance()
                                            ->current_test_info()
                                            ->name()));
    fs::remove_all(root_);
    fs::create_directories(root_);
  }
  void TearDown() override { fs::remove_all(root_); }

  // Runs the executable; returns its exit code and captures stdout/stderr.
  int Cli(const std::string& args) {
    const std::string cmd = std::string(LMIMD_CLI_PATH) + " " + args + " >" +
                            (root_ / "stdout").string() + " 2>" +
                            (root_ / "stderr").string();
    const int status = std::system(cmd.c_str());
    out_ = Slurp(root_ / "stdout");
    err_ = Slurp(root_ / "stderr");
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  fs::path Write(const std::string& name, const std::string& body) {
    std::ofstream(root_ / name) << body;
    return root_ / name;
  }

  // Every regular file under `a` exists under `b` with identical bytes, and
  // vice versa.
  void ExpectSameTree(const fs::path& a, const fs::path& b) {
    std::size_t count = 0;
    for (const auto& e : fs::recursive_directory_iterator(a)) {
      if (!e.is_regular_file()) continue;
      const auto rel = fs::relative(e.path(), a);
      ASSERT_TRUE(fs::exists(b / rel)) << rel;
      EXPECT_EQ(Slurp(e.path()), Slurp(b / rel)) << rel;
      ++count;
    }
    std::size_t other = 0;
    for (const auto& e : fs::recursive_directory_iterator(b)) {
      other += e.is_regular_file();
    }
    EXPECT_EQ(count, other);
    EXPECT_GT(count, 0u);
  }

  fs::path root_;
  std::string out_;
  std::string err_;
};

TEST_F(CliTest, SimulateMatchesLibraryByteForByte) {
  for (const char* name : {"single_link", "three_links", "adversarial"}) {
    const fs::path file = kScenarios / (std::string(name) + ".json");
    const fs::path cli = root_ / name / "cli";
    const fs::path lib = root_ / name / "lib";
    ASSERT_EQ(Cli("--scenario " + file.string() + " --out " + cli.string()), 0)
        << err_;
    const auto result = cli::SimulateAndAudit(LoadScenario(file));
    cli::WriteSimulateResult(result, lib);
    ExpectSameTree(lib, cli);
    EXPECT_EQ(out_, SummaryLine(result.report) + "\n");
  }
}

TEST_F(CliTest, SimulateWritesTraceAuditAndOptimum) {
  ASSERT_EQ(Cli("--scenario " + (kScenarios / "single_link.json").string() +
                " --out " + root_.string()),
            0);
  EXPECT_TRUE(fs::exists(root_ / "trace" / "path_flow.csv"));
  EXPECT_TRUE(fs::exists(root_ / "trace" / "resource_link.csv"));
  EXPECT_TRUE(fs::exists(root_ / "audit.json"));
  EXPECT_TRUE(fs::exists(root_ / "opt.json"));
}

TEST_F(CliTest, OptAndAuditModesMatchLibrary) {
  const fs::path file = kScenarios / "three_links.json";
  const Scenario s = LoadScenario(file);
  ASSERT_EQ(Cli("--mode opt --scenario " + file.string() + " --out " +
                root_.string()),
            0);
  EXPECT_EQ(Slurp(root_ / "opt.json"), OptimumJson(s, SolveOpt(s)));

  const fs::path audit_dir = root_ / "audit";
  ASSERT_EQ(Cli("--mode audit --scenario " + file.string() + " --out " +
                audit_dir.string()),
            0);
  EXPECT_EQ(Slurp(audit_dir / "audit.json"),
            AuditJson(cli::SimulateAndAudit(s).report));
  EXPECT_FALSE(fs::exists(audit_dir / "trace"));
}

TEST_F(CliTest, BandwidthModeMatchesLibrary) {
  const fs::path file = kScenarios / "bandwidth_two_paths.json";
  ASSERT_EQ(Cli("--mode bwtest --scenario " + file.string() + " --out " +
                root_.string()),
            0);
  const auto est = EstimateBandwidth(LoadScenario(file));
  EXPECT_EQ(Slurp(root_ / "bandwidth.json"), BandwidthJson(est));
  EXPECT_NEAR(est.estimate, 100, 5);
}

TEST_F(CliTest, SeedOverride) {
  const fs::path file = kScenarios / "adversarial.json";
  Scenario s = LoadScenario(file);
  s.loss_policy.target_path.reset();
  const fs::path untargeted = Write("untargeted.json", EmitScenario(s));
  ASSERT_EQ(Cli("--seed 99 --scenario " + untargeted.string() + " --out " +
                (root_ / "cli").string()),
            0);
  s.loss_policy.seed = 99;
  cli::WriteSimulateResult(cli::SimulateAndAudit(s), root_ / "lib");
  ExpectSameTree(root_ / "lib", root_ / "cli");
}

TEST_F(CliTest, ValidationErrorNamesConnection) {
  Scenario s = testing::SingleLink(10, 1, 0.1, 0.1, 5);
  const fs::path file = Write("bad.json", EmitScenario(s));
  EXPECT_EQ(Cli("--scenario " + file.string() + " --out " + root_.string()),
            cli::kExitValidation);
  EXPECT_NE(err_.find("flow"), std::string::npos) << err_;
  EXPECT_NE(err_.find("alpha must be < beta"), std::string::npos) << err_;
}

TEST_F(CliTest, MalformedScenarioReportsLocation) {
  const fs::path file = Write("broken.json", "{\n  \"epsilon\": 0.1,\n  ]\n");
  EXPECT_EQ(Cli("--scenario " + file.string()), cli::kExitValidation);
  EXPECT_NE(err_.find("line 3"), std::string::npos) << err_;
}

TEST_F(CliTest, UsageErrorsAreValidationErrors) {
  EXPECT_EQ(Cli("--scenario " + (root_ / "missing.json").string()),
            cli::kExitValidation);
  EXPECT_EQ(Cli("--scenario " + (kScenarios / "single_link.json").string() +
                " --mode bogus"),
            cli::kExitValidation);
}

TEST_F(CliTest, UnboundedOptimum) {
  const Scenario s = testing::SingleLink(
      std::numeric_limits<double>::infinity(), 1, 0.01, 0.1, 5);
  const fs::path file = Write("inf.json", EmitScenario(s));
  // Simulation still runs and reports the problem.
  EXPECT_EQ(Cli("--scenario " + file.string() + " --out " +
                (root_ / "sim").string()),
            cli::kExitOk);
  EXPECT_NE(err_.find("unbounded"), std::string::npos) << err_;
  EXPECT_TRUE(fs::exists(root_ / "sim" / "audit.json"));
  EXPECT_FALSE(fs::exists(root_ / "sim" / "opt.json"));
  // The optimum alone cannot be produced.
  EXPECT_EQ(Cli("--mode opt --scenario " + file.string() + " --out " +
                (root_ / "opt").string()),
            cli::kExitRuntime);
}

TEST_F(CliTest, EpsilonSweep) {
  const fs::path file = kScenarios / "single_link.json";
  ASSERT_EQ(Cli("--scenario " + file.string() + " --out " + root_.string() +
                " --sweep-epsilon 0.2,0.1,0.05"),
            0)
      << err_;
  const std::string summary = Slurp(root_ / "sweep_summary.csv");
  std::istringstream lines(summary);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "epsilon,duration,ratio,eps_hat");
  std::vector<cli::SweepRow> rows;
  const Scenario base = LoadScenario(file);
  for (double eps : {0.2, 0.1, 0.05}) {
    const fs::path dir = root_ / ("eps_" + FormatNumber(eps));
    EXPECT_TRUE(fs::exists(dir / "audit.json"));
    EXPECT_TRUE(fs::exists(dir / "trace" / "path_flow.csv"));
    const Scenario s = cli::SweepPoint(base, eps, std::nullopt);
    EXPECT_DOUBLE_EQ(s.connections[0].beta, eps);
    EXPECT_DOUBLE_EQ(s.connections[0].alpha, eps * eps);
    const auto result = cli::SimulateAndAudit(s);
    EXPECT_EQ(Slurp(dir / "audit.json"), AuditJson(result.report));
    rows.push_back({eps, 2000, result.report.competitive_ratio,
                    result.report.epsilon_hat});
  }
  EXPECT_EQ(summary, cli::SweepSummaryCsv(rows));
}

TEST_F(CliTest, DurationSweepNestsDirectories) {
  const fs::path file = kScenarios / "single_link.json";
  ASSERT_EQ(Cli("--scenario " + file.string() + " --out " + root_.string() +
                " --sweep-epsilon 0.1 --sweep-duration 0.5,1"),
            0)
      << err_;
  EXPECT_TRUE(fs::exists(root_ / "eps_0.1" / "dur_0.5" / "audit.json"));
  EXPECT_TRUE(fs::exists(root_ / "eps_0.1" / "dur_1" / "audit.json"));
  const std::string summary = Slurp(root_ / "sweep_summary.csv");
  EXPECT_NE(summary.find("\n0.1,1000,"), std::string::npos) << summary;
  EXPECT_NE(summary.find("\n0.1,2000,"), std::string::npos) << summary;
}

TEST(SweepPointTest, KeepsBetaScaleAndValueRatio) {
  Scenario s = testing::SingleLink(10, 1, 0.0025, 0.05, 100);
  s.connections[0].value = 0.5;
  const Scenario p = cli::SweepPoint(s, 0.2, 3.0);
  EXPECT_DOUBLE_EQ(p.connections[0].beta, 0.1);
  EXPECT_DOUBLE_EQ(p.connections[0].alpha, 0.2 * 0.1 * 0.5);
  EXPECT_EQ(p.connections[0].duration(), 300);
  EXPECT_EQ(p.epsilon, 0.2);
}

}  // namespace
}  // namespace lmimd
