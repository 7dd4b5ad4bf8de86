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

// Who loses what at a congested resource.
//
// A resource discards exactly max(0, into - cap) each round. How that excess
// is split across the cohorts crossing it is the loss policy:
//
//  * Proportional: every cohort loses the same fraction lost/into.
//  * AdversarialFair: one victim absorbs as much of the excess as its
//    fairness budget allows, the rest is spread proportionally over the
//    others. The budget keeps, for every path p,
//
//        sum over p's cohorts of (fraction lost so far)
//          <= (1 + epsilon) * sum over p's transits of (lost(r,t)/into(r,t))
//
//    true after every resource step, so the condition holds over the whole
//    active window once every cohort has drained.

#ifndef LMIMD_LOSS_POLICY_H_
#define LMIMD_LOSS_POLICY_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "lmimd/scenario.h"

namespace lmimd {

// One cohort's arrival at a resource.
struct Contribution {
  std::size_t path = 0;
  double amount = 0.0;       // surviving packets entering the resource
  double cohort_sent = 0.0;  // sent(p, s) for the cohort's send round s
};

// Counter-based generator: a pure function of (seed, counters). Draws do not
// depend on call order.
std::uint64_t CounterDraw(std::uint64_t seed, std::uint64_t a, std::uint64_t b);

// Splits max(0, sum - cap) in proportion to the contributions.
std::vector<double> ProportionalLoss(std::span<const Contribution> contributions,
                                     double cap);

// Gives contributions[victim] as much of the excess as `victim_limit` allows
// (never less than its proportional share, never more than it carries), and
// splits the remainder proportionally among the others.
std::vector<double> BiasedLoss(std::span<const Contribution> contributions,
                               double cap, std::size_t victim,
                               double victim_limit);

class FairnessBudget {
 public:
  explicit FairnessBudget(std::size_t num_paths)
      : lost_fraction_(num_paths, 0.0), ratio_sum_(num_paths, 0.0) {}

  // Sum over the path's cohorts (including in-flight) of lost/sent so far.
  double lost_fraction(std::size_t path) const { return lost_fraction_[path]; }
  // Sum over the path's cohort transits of the resource-wide loss ratio.
  double ratio_sum(std::size_t path) const { return ratio_sum_[path]; }

  // Largest loss a cohort of `path` carrying `cohort_sent` may take at a
  // resource with loss ratio `ratio` without breaking the budget.
  double Headroom(std::size_t path, double cohort_sent, double ratio,
                  double epsilon) const;

  void Charge(std::size_t path, double loss, double cohort_sent, double ratio);

 private:
  std::vector<double> lost_fraction_;
  std::vector<double> ratio_sum_;
};

// Stateful loss policy for one run: resolves the adversary's target and keeps
// the per-path fairness budget up to date.
class LossAllocator {
 public:
  LossAllocator(const Scenario& scenario, const Topology& topology);

  // Returns per-contribution losses (same order) and charges the budget.
  // Throws std::invalid_argument on negative contributions or capacity.
  std::vector<double> Allocate(std::span<const Contribution> contributions,
                               double cap, Round round, std::size_t resource);

  const FairnessBudget& budget() const { return budget_; }

 private:
  LossPolicyKind kind_;
  std::uint64_t seed_;
  std::optional<std::size_t> target_;
  double epsilon_;
  FairnessBudget budget_;
};

}  // namespace lmimd

#endif  // LMIMD_LOSS_POLICY_H_
