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

// Scenario generators and hand-built fixtures shared by the test, acceptance
// and benchmark targets.

#ifndef LMIMD_TESTS_SUPPORT_RANDOM_SCENARIO_H_
#define LMIMD_TESTS_SUPPORT_RANDOM_SCENARIO_H_

#include <random>
#include <string>
#include <vector>

#include "lmimd/scenario.h"

namespace lmimd::testing {

struct RandomScenarioOptions {
  int max_resources = 6;
  int max_paths = 8;
  int max_route_length = 3;
  Round max_delay = 5;
  Round min_duration = 10;
  Round max_duration = 300;
  LossPolicyKind policy = LossPolicyKind::kProportional;
};

// Random valid scenario: random routes and delays, step capacities, mixed
// rate parameters. Resamples until Validate() passes.
Scenario RandomScenario(std::mt19937_64& rng,
                        const RandomScenarioOptions& options);

// Small static-capacity LP instance with integer capacities in [1, max_cap]
// and short windows, for comparing the solver against brute force.
Scenario RandomOptInstance(std::mt19937_64& rng, int resources, int paths,
                           int max_cap);

// One connection over one resource with constant capacity.
Scenario SingleLink(double capacity, double start_rate, double alpha,
                    double beta, Round duration, Round delay = 0);

ConnectionSpec Connection(std::string id, std::vector<std::string> route,
                          Round start, Round end);

}  // namespace lmimd::testing

#endif  // LMIMD_TESTS_SUPPORT_RANDOM_SCENARIO_H_
