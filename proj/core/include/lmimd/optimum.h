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

// Best static allocation: one fixed rate f(p) >= 0 per connection, held for
// its whole active window, maximizing
//
//     sum_p val(p) * |T_p| * f(p)
//
// subject to every per-round capacity. A connection active over T_p loads
// resource r during rounds T_p + pre_delay(p, r), so the capacity row for
// (r, t) contains the paths whose send round t - pre_delay(p, r) is active.

#ifndef LMIMD_OPTIMUM_H_
#define LMIMD_OPTIMUM_H_

#include <cstddef>
#include <string>
#include <vector>

#include "lmimd/scenario.h"

namespace lmimd {

// A maximal run of rounds [from_round, to_round] on one resource during
// which the capacity constraint binds at the optimum.
struct TightConstraint {
  std::size_t resource = 0;
  Round from_round = 0;
  Round to_round = 0;
  friend bool operator==(const TightConstraint&,
                         const TightConstraint&) = default;
};

struct OptimumSolution {
  std::vector<double> rates;  // f(p), indexed like scenario.connections
  double opt_value = 0.0;
  std::vector<TightConstraint> tight_constraints;
  // |dual objective - primal objective| / max(1, primal); 0 for the oracle.
  double relative_gap = 0.0;
};

// Exact LP optimum. Throws UnboundedError if a positively valued connection
// crosses no finite capacity, ValidationError on an invalid scenario.
OptimumSolution SolveOpt(const Scenario& scenario);

// Exhaustive search over rates {0, res, 2 res, ...} per connection, checking
// every (resource, round) pair directly. Test oracle; at most 4 connections
// (std::invalid_argument otherwise).
OptimumSolution BruteForceOpt(const Scenario& scenario, double resolution);

// Sum over paths present at (r, t) of rates, for feasibility checks.
double ResourceLoad(const Scenario& scenario, const std::vector<double>& rates,
                    std::size_t resource, Round t);

// `{"rates": {id: f}, "opt_value": v, "relative_gap": g,
//   "tight_constraints": [{"resource", "from_round", "to_round"}]}`
std::string OptimumJson(const Scenario& scenario,
                        const OptimumSolution& solution);

}  // namespace lmimd

#endif  // LMIMD_OPTIMUM_H_
