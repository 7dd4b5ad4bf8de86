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

// Round-by-round fluid simulation.
//
// Each round t runs four phases:
//   1. every active source emits its Linear MIMD rate (using feedback up to
//      round t-1 only) as a new cohort;
//   2-3. resources are visited in Topology::transit_order(); each gathers the
//      cohorts scheduled to transit it in round t (sent at t - pre_delay),
//      discards exactly max(0, into - cap) via the loss policy, and passes
//      the survivors on;
//   4. cohorts sent at t - total_delay reach their destination; the source
//      records rcvd and the resulting loss ratio.
// There is no queueing: excess is dropped, never delayed.

#ifndef LMIMD_SIMULATOR_H_
#define LMIMD_SIMULATOR_H_

#include <memory>
#include <vector>

#include "lmimd/loss_policy.h"
#include "lmimd/protocol.h"
#include "lmimd/scenario.h"
#include "lmimd/trace.h"

namespace lmimd {

// Relative tolerance of the kernel's internal conservation checks.
inline constexpr double kConservationTolerance = 1e-9;

class Simulator {
 public:
  // Throws ValidationError if the scenario is invalid.
  explicit Simulator(Scenario scenario);

  Simulator(const Simulator&) = delete;
  Simulator& operator=(const Simulator&) = delete;

  // Next round to execute.
  Round round() const { return round_; }
  Round horizon() const { return trace_.horizon; }
  bool done() const { return round_ > trace_.horizon; }

  // Executes round(). Throws ConservationError on an accounting breach.
  void Step();

  // Sum over paths of val(p) * rcvd(p, t), for an already executed round.
  double WeightedReceived(Round t) const;

  // Trace of the rounds executed so far.
  const RunTrace& trace() const { return trace_; }

  // Runs to the horizon, checks global conservation, returns the trace.
  RunTrace Finish() &&;

 private:
  struct Cohorts {
    std::vector<double> remaining;  // index s - start
    std::vector<double> hop_loss;
    std::vector<std::size_t> next_hop;
  };

  void EmitSources(Round t);
  void TransitResources(Round t);
  void DeliverArrivals(Round t);

  std::shared_ptr<const Scenario> scenario_;
  Topology topology_;
  LossAllocator allocator_;
  std::vector<PathState> states_;
  std::vector<Cohorts> cohorts_;
  RunTrace trace_;
  Round round_ = 0;

  // Scratch buffers reused across rounds.
  std::vector<Contribution> contributions_;
  std::vector<std::size_t> slots_;
};

// Simulates the whole scenario.
RunTrace Simulate(const Scenario& scenario);

}  // namespace lmimd

#endif  // LMIMD_SIMULATOR_H_
