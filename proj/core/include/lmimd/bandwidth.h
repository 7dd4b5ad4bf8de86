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

// Multi-path bandwidth testing: run the protocol on every path at once with
// equal value until the aggregate received rate settles; that rate estimates
// the maximum total bandwidth the paths can carry together.

#ifndef LMIMD_BANDWIDTH_H_
#define LMIMD_BANDWIDTH_H_

#include <optional>
#include <string>

#include "lmimd/scenario.h"

namespace lmimd {

// Relative change between consecutive trailing windows that counts as
// settled.
inline constexpr double kBandwidthSettleTolerance = 0.005;

struct BandwidthEstimate {
  double estimate = 0.0;  // mean aggregate rcvd per round, last window
  Round window = 0;       // rounds per trailing window
  Round rounds_run = 0;
  bool converged = false;
  std::optional<double> opt_rate;  // sum of optimal static rates
  std::string opt_error;
};

// Copy of `scenario` with every value set to 1 and alpha = epsilon * beta.
// Throws ValidationError unless all connections share one active interval.
Scenario BandwidthTestScenario(const Scenario& scenario);

// Steps the simulator until two consecutive trailing windows of
// max_p (1 + d_p) / (beta_p * epsilon) rounds agree within
// kBandwidthSettleTolerance, or the horizon is reached.
BandwidthEstimate EstimateBandwidth(const Scenario& scenario);

std::string BandwidthJson(const BandwidthEstimate& estimate);

}  // namespace lmimd

#endif  // LMIMD_BANDWIDTH_H_
