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

#include "commands.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <thread>

#include <fmt/format.h>

#include "lmimd/bandwidth.h"
#include "lmimd/errors.h"
#include "lmimd/scenario_json.h"
#include "lmimd/simulator.h"

namespace lmimd::cli {
namespace {

void WriteFile(const std::filesystem::path& file, const std::string& body) {
  std::filesystem::create_directories(file.parent_path());
  std::ofstream out(file, std::ios::binary);
  out << body;
  if (!out) throw Error(fmt::format("cannot write '{}'", file.string()));
}

Round LongestDuration(const Scenario& s) {
  Round longest = 0;
  for (const auto& c : s.connections) longest = std::max(longest, c.duration());
  return longest;
}

int Sweep(const Scenario& base, const RunConfig& config, std::ostream& out) {
  struct Entry {
    double epsilon;
    std::optional<double> multiplier;
    std::filesystem::path dir;
  };
  std::vector<Entry> entries;
  const std::vector<double> epsilons =
      config.sweep_epsilon.empty() ? std::vector<double>{base.epsilon}
                                   : config.sweep_epsilon;
  for (double eps : epsilons) {
    const auto eps_dir = config.out / fmt::format("eps_{}", FormatNumber(eps));
    if (config.sweep_duration.empty()) {
      entries.push_back({eps, std::nullopt, eps_dir});
    } else {
      for (double m : config.sweep_duration) {
        entries.push_back({eps, m, eps_dir / fmt::format("dur_{}",
                                                         FormatNumber(m))});
      }
    }
  }

  // Points are independent; each worker writes only its own directory.
  std::vector<SweepRow> rows(entries.size());
  std::vector<std::exception_ptr> failures(entries.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < entries.size(); i = next++) {
      try {
        const Scenario s =
            SweepPoint(base, entries[i].epsilon, entries[i].multiplier);
        const SimulateResult result = SimulateAndAudit(s);
        WriteSimulateResult(result, entries[i].dir);
        rows[i] = {entries[i].epsilon, LongestDuration(s),
                   result.report.competitive_ratio, result.report.epsilon_hat};
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::clamp<std::size_t>(
      std::thread::hardware_concurrency(), 1, entries.size());
  {
    std::vector<std::jthread> pool;
    for (std::size_t k = 0; k < threads; ++k) pool.emplace_back(worker);
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  WriteFile(config.out / "sweep_summary.csv", SweepSummaryCsv(rows));
  for (const auto& row : rows) {
    out << fmt::format("epsilon={} duration={} ratio={} eps_hat={}\n",
                       FormatNumber(row.epsilon), row.duration,
                       row.ratio ? FormatNumber(*row.ratio) : "n/a",
                       FormatNumber(row.eps_hat));
  }
  return kExitOk;
}

int Dispatch(const RunConfig& config, std::ostream& out, std::ostream& err) {
  Scenario scenario = LoadScenario(config.scenario);
  if (config.seed) scenario.loss_policy.seed = *config.seed;
  RequireValid(scenario);

  switch (config.mode) {
    case Mode::kSimulate:
    case Mode::kAudit: {
      if (config.mode == Mode::kSimulate &&
          (!config.sweep_epsilon.empty() || !config.sweep_duration.empty())) {
        return Sweep(scenario, config, out);
      }
      const SimulateResult result = SimulateAndAudit(scenario);
      if (!result.opt) err << result.report.opt_error << "\n";
      if (config.mode == Mode::kSimulate) {
        WriteSimulateResult(result, config.out);
      } else {
        WriteFile(config.out / "audit.json", AuditJson(result.report));
      }
      out << SummaryLine(result.report) << "\n";
      return kExitOk;
    }
    case Mode::kOpt: {
      const OptimumSolution opt = SolveOpt(scenario);
      WriteFile(config.out / "opt.json", OptimumJson(scenario, opt));
      out << fmt::format("opt_value={}\n", FormatNumber(opt.opt_value));
      return kExitOk;
    }
    case Mode::kBandwidthTest: {
      const BandwidthEstimate est = EstimateBandwidth(scenario);
      WriteFile(config.out / "bandwidth.json", BandwidthJson(est));
      out << fmt::format("estimate={} opt_rate={} converged={}\n",
                         FormatNumber(est.estimate),
                         est.opt_rate ? FormatNumber(*est.opt_rate) : "n/a",
                         est.converged);
      return kExitOk;
    }
  }
  return kExitRuntime;
}

}  // namespace

SimulateResult SimulateAndAudit(const Scenario& scenario) {
  SimulateResult result;
  result.trace = Simulate(scenario);
  try {
    result.opt = SolveOpt(scenario);
  } catch (const UnboundedError& e) {
    result.report = AuditTrace(result.trace);
    result.report.opt_error = e.what();
    return result;
  }
  result.report = CompetitiveRatio(result.trace, *result.opt);
  return result;
}

void WriteSimulateResult(const SimulateResult& result,
                         const std::filesystem::path& dir) {
  WriteTraceCsv(result.trace, dir / "trace");
  WriteFile(dir / "audit.json", AuditJson(result.report));
  if (result.opt) {
    WriteFile(dir / "opt.json", OptimumJson(*result.trace.scenario, *result.opt));
  }
}

Scenario SweepPoint(const Scenario& scenario, double epsilon,
                    std::optional<double> duration_multiplier) {
  Scenario s = scenario;
  s.epsilon = epsilon;
  for (auto& c : s.connections) {
    const double scale = std::min(1.0, c.beta / scenario.epsilon);
    if (c.value > 0.0) {
      const auto params = TheoremParameters(epsilon, c.value, scale);
      c.alpha = params.alpha;
      c.beta = params.beta;
    } else {
      const double ratio = c.alpha / c.beta;
      c.beta = scale * epsilon;
      c.alpha = ratio * c.beta;
    }
    if (duration_multiplier) {
      const auto len = std::max<Round>(
          1, std::llround(*duration_multiplier *
                          static_cast<double>(c.duration())));
      c.end = c.start + len - 1;
    }
  }
  return s;
}

std::string SweepSummaryCsv(const std::vector<SweepRow>& rows) {
  std::string csv = "epsilon,duration,ratio,eps_hat\n";
  for (const auto& row : rows) {
    csv += fmt::format("{},{},{},{}\n", FormatNumber(row.epsilon), row.duration,
                       row.ratio ? FormatNumber(*row.ratio) : "",
                       FormatNumber(row.eps_hat));
  }
  return csv;
}

int Run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    return Dispatch(config, out, err);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

}  // namespace lmimd::cli
