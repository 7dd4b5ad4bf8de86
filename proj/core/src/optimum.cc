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

#include "lmimd/optimum.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include <fmt/format.h>

#include "json.hpp"
#include "lmimd/errors.h"
#include "lmimd/simplex.h"

namespace lmimd {
namespace {

constexpr double kFeasibilityTolerance = 1e-9;

// Rounds [from, to] on one resource with a constant set of present paths and
// a constant capacity.
struct Segment {
  std::size_t resource;
  Round from;
  Round to;
  double cap;
  std::vector<std::size_t> paths;  // sorted
};

std::vector<Segment> Segments(const Scenario& s, const Topology& topo) {
  const Round horizon = s.horizon();
  std::vector<Segment> out;
  for (std::size_t r = 0; r < topo.num_resources(); ++r) {
    std::set<Round> cuts{0, horizon + 1};
    for (const auto& inc : topo.incidences(r)) {
      const auto& c = s.connections[inc.path];
      cuts.insert(c.start + inc.pre_delay);
      cuts.insert(c.end + inc.pre_delay + 1);
    }
    for (const auto& step : s.resources[r].capacity.steps()) {
      if (step.from_round <= horizon) cuts.insert(step.from_round);
    }
    for (auto it = cuts.begin(); std::next(it) != cuts.end(); ++it) {
      const Round from = *it;
      const Round to = *std::next(it) - 1;
      if (from > horizon) break;
      Segment seg{r, from, to, s.resources[r].capacity.at(from), {}};
      for (const auto& inc : topo.incidences(r)) {
        if (s.connections[inc.path].active().contains(from - inc.pre_delay)) {
          seg.paths.push_back(inc.path);
        }
      }
      if (seg.paths.empty()) continue;
      std::sort(seg.paths.begin(), seg.paths.end());
      out.push_back(std::move(seg));
    }
  }
  return out;
}

std::vector<double> Weights(const Scenario& s) {
  std::vector<double> w;
  for (const auto& c : s.connections) {
    w.push_back(c.value * static_cast<double>(c.duration()));
  }
  return w;
}

double Objective(const std::vector<double>& weights,
                 const std::vector<double>& rates) {
  double v = 0.0;
  for (std::size_t p = 0; p < rates.size(); ++p) v += weights[p] * rates[p];
  return v;
}

[[noreturn]] void ThrowUnbounded(const ConnectionSpec& c) {
  throw UnboundedError(fmt::format(
      "unbounded: connection '{}' has positive value but crosses no finite "
      "capacity",
      c.id));
}

std::vector<TightConstraint> TightRuns(const std::vector<Segment>& segments,
                                       const std::vector<double>& rates) {
  std::vector<TightConstraint> out;
  for (const auto& seg : segments) {
    if (!std::isfinite(seg.cap)) continue;
    double load = 0.0;
    for (std::size_t p : seg.paths) load += rates[p];
    if (load < seg.cap - kFeasibilityTolerance * std::max(1.0, seg.cap)) {
      continue;
    }
    if (!out.empty() && out.back().resource == seg.resource &&
        out.back().to_round + 1 == seg.from) {
      out.back().to_round = seg.to;
    } else {
      out.push_back({seg.resource, seg.from, seg.to});
    }
  }
  return out;
}

}  // namespace

OptimumSolution SolveOpt(const Scenario& scenario) {
  const Topology topo(scenario);
  const auto segments = Segments(scenario, topo);
  const auto weights = Weights(scenario);
  const std::size_t n = scenario.connections.size();

  // Only the tightest capacity matters among rows with the same path set.
  std::map<std::vector<std::size_t>, double> rows;
  std::vector<bool> bounded(n, false);
  for (const auto& seg : segments) {
    if (!std::isfinite(seg.cap)) continue;
    auto [it, inserted] = rows.emplace(seg.paths, seg.cap);
    if (!inserted) it->second = std::min(it->second, seg.cap);
    for (std::size_t p : seg.paths) bounded[p] = true;
  }

  // Zero-weight paths stay at rate 0 and are left out of the LP.
  std::vector<std::size_t> columns;
  std::vector<int> column_of(n, -1);
  for (std::size_t p = 0; p < n; ++p) {
    if (weights[p] <= 0.0) continue;
    if (!bounded[p]) ThrowUnbounded(scenario.connections[p]);
    column_of[p] = static_cast<int>(columns.size());
    columns.push_back(p);
  }

  PackingLp lp;
  for (std::size_t p : columns) lp.objective.push_back(weights[p]);
  for (const auto& [paths, cap] : rows) {
    std::vector<double> row(columns.size(), 0.0);
    bool any = false;
    for (std::size_t p : paths) {
      if (column_of[p] >= 0) {
        row[static_cast<std::size_t>(column_of[p])] = 1.0;
        any = true;
      }
    }
    if (!any) continue;
    lp.rows.push_back(std::move(row));
    lp.bounds.push_back(cap);
  }

  OptimumSolution sol;
  sol.rates.assign(n, 0.0);
  if (!columns.empty()) {
    const LpResult res = SolvePackingLp(lp);
    if (res.status == LpStatus::kUnbounded) {
      throw UnboundedError("unbounded: static optimum has no finite maximum");
    }
    for (std::size_t k = 0; k < columns.size(); ++k) {
      sol.rates[columns[k]] = res.x[k];
    }
    sol.relative_gap = std::abs(res.dual_value - res.value) /
                       std::max(1.0, std::abs(res.value));
  }
  sol.opt_value = Objective(weights, sol.rates);
  sol.tight_constraints = TightRuns(segments, sol.rates);
  return sol;
}

OptimumSolution BruteForceOpt(const Scenario& scenario, double resolution) {
  RequireValid(scenario);
  const std::size_t n = scenario.connections.size();
  if (n > 4) throw std::invalid_argument("brute force supports <= 4 paths");
  if (!(resolution > 0.0)) throw std::invalid_argument("resolution must be > 0");

  // One row per (resource, round), no deduplication.
  struct Row {
    double cap;
    std::vector<std::size_t> paths;
  };
  std::vector<Row> rows;
  const Round horizon = scenario.horizon();
  for (const auto& res : scenario.resources) {
    for (Round t = 0; t <= horizon; ++t) {
      Row row{res.capacity.at(t), {}};
      for (std::size_t p = 0; p < n; ++p) {
        const auto& c = scenario.connections[p];
        if (std::find(c.route.begin(), c.route.end(), res.id) ==
            c.route.end()) {
          continue;
        }
        if (c.active().contains(t - PreDelay(c, res.id))) row.paths.push_back(p);
      }
      if (!row.paths.empty() && std::isfinite(row.cap)) {
        rows.push_back(std::move(row));
      }
    }
  }

  const auto weights = Weights(scenario);
  std::vector<long> max_steps(n, 0);
  for (std::size_t p = 0; p < n; ++p) {
    if (weights[p] <= 0.0) continue;
    double limit = std::numeric_limits<double>::infinity();
    for (const auto& row : rows) {
      if (std::find(row.paths.begin(), row.paths.end(), p) != row.paths.end()) {
        limit = std::min(limit, row.cap);
      }
    }
    if (!std::isfinite(limit)) ThrowUnbounded(scenario.connections[p]);
    max_steps[p] = static_cast<long>(std::floor(limit / resolution + 1e-9));
  }

  std::vector<double> load(rows.size(), 0.0);
  std::vector<double> rates(n, 0.0);
  std::vector<double> best(n, 0.0);
  double best_value = -1.0;

  auto fits = [&]() {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (load[i] > rows[i].cap + kFeasibilityTolerance) return false;
    }
    return true;
  };
  auto add = [&](std::size_t p, double amount) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& ps = rows[i].paths;
      if (std::find(ps.begin(), ps.end(), p) != ps.end()) load[i] += amount;
    }
  };

  auto search = [&](auto&& self, std::size_t p) -> void {
    if (p == n) {
      const double v = Objective(weights, rates);
      if (v > best_value) {
        best_value = v;
        best = rates;
      }
      return;
    }
    for (long k = 0; k <= max_steps[p]; ++k) {
      rates[p] = static_cast<double>(k) * resolution;
      add(p, rates[p]);
      // Loads only grow with later paths, so an overloaded row prunes.
      const bool ok = fits();
      if (ok) self(self, p + 1);
      add(p, -rates[p]);
      if (!ok) break;
    }
    rates[p] = 0.0;
  };
  search(search, 0);

  OptimumSolution sol;
  sol.rates = best;
  sol.opt_value = Objective(weights, best);
  const Topology topo(scenario);
  sol.tight_constraints = TightRuns(Segments(scenario, topo), best);
  return sol;
}

double ResourceLoad(const Scenario& scenario, const std::vector<double>& rates,
                    std::size_t resource, Round t) {
  const std::string& id = scenario.resources[resource].id;
  double load = 0.0;
  for (std::size_t p = 0; p < scenario.connections.size(); ++p) {
    const auto& c = scenario.connections[p];
    if (std::find(c.route.begin(), c.route.end(), id) == c.route.end()) {
      continue;
    }
    if (c.active().contains(t - PreDelay(c, id))) load += rates[p];
  }
  return load;
}

std::string OptimumJson(const Scenario& scenario,
                        const OptimumSolution& solution) {
  nlohmann::ordered_json doc;
  doc["rates"] = nlohmann::ordered_json::object();
  for (std::size_t p = 0; p < scenario.connections.size(); ++p) {
    doc["rates"][scenario.connections[p].id] = solution.rates[p];
  }
  doc["opt_value"] = solution.opt_value;
  doc["relative_gap"] = solution.relative_gap;
  doc["tight_constraints"] = nlohmann::ordered_json::array();
  for (const auto& tc : solution.tight_constraints) {
    doc["tight_constraints"].push_back(
        {{"resource", scenario.resources[tc.resource].id},
         {"from_round", tc.from_round},
         {"to_round", tc.to_round}});
  }
  return doc.dump(2) + "\n";
}

}  // namespace lmimd
