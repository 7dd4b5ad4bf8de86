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

// Commands behind the `lmimd` executable. Each is a thin composition of core
// library calls plus file emission, so a test can reproduce any output
// byte-for-byte without going through the executable.

#ifndef LMIMD_TOOLS_COMMANDS_H_
#define LMIMD_TOOLS_COMMANDS_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "lmimd/audit.h"
#include "lmimd/optimum.h"
#include "lmimd/scenario.h"
#include "lmimd/trace.h"

namespace lmimd::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitRuntime = 3;

enum class Mode { kSimulate, kBandwidthTest, kAudit, kOpt };

struct RunConfig {
  std::filesystem::path scenario;
  std::filesystem::path out = ".";
  std::optional<std::uint64_t> seed;
  std::vector<double> sweep_epsilon;
  std::vector<double> sweep_duration;
  Mode mode = Mode::kSimulate;
};

struct SimulateResult {
  RunTrace trace;
  AuditReport report;
  std::optional<OptimumSolution> opt;  // unset when the optimum is unbounded
};

// Simulation plus audit; an unbounded optimum is recorded in
// report.opt_error instead of thrown.
SimulateResult SimulateAndAudit(const Scenario& scenario);

// trace/path_<id>.csv, trace/resource_<id>.csv, audit.json and (if bounded)
// opt.json under `dir`.
void WriteSimulateResult(const SimulateResult& result,
                         const std::filesystem::path& dir);

// Scenario for one sweep point: epsilon replaced, (alpha, beta) re-derived
// with beta_scale = min(1, beta / old_epsilon), and, when
// `duration_multiplier` is set, every active interval stretched to
// round(multiplier * |T|) rounds from the same start.
Scenario SweepPoint(const Scenario& scenario, double epsilon,
                    std::optional<double> duration_multiplier);

struct SweepRow {
  double epsilon = 0.0;
  Round duration = 0;  // longest active interval, rounds
  std::optional<double> ratio;
  double eps_hat = 0.0;
};

// `epsilon,duration,ratio,eps_hat`
std::string SweepSummaryCsv(const std::vector<SweepRow>& rows);

// Entry point shared by the executable and tests. Returns the exit code.
int Run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace lmimd::cli

#endif  // LMIMD_TOOLS_COMMANDS_H_
