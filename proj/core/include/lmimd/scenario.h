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

// Domain model of a fluid network: capacity-limited resources, connections
// routed over them with fixed per-hop latencies, and the global parameters of
// a run. Everything here is an immutable value once built; the simulator,
// optimum solver and auditor share a Scenario read-only.

#ifndef LMIMD_SCENARIO_H_
#define LMIMD_SCENARIO_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lmimd {

// Discrete time index. Rounds start at 0.
using Round = std::int64_t;

// Closed interval of rounds {first, ..., last}.
struct RoundWindow {
  Round first = 0;
  Round last = -1;

  Round size() const { return last >= first ? last - first + 1 : 0; }
  bool contains(Round t) const { return t >= first && t <= last; }
  friend bool operator==(const RoundWindow&, const RoundWindow&) = default;
};

struct CapacityStep {
  Round from_round = 0;
  double value = 0.0;
  friend bool operator==(const CapacityStep&, const CapacityStep&) = default;
};

// Piecewise-constant capacity: the value at round t is the value of the last
// step whose from_round <= t. The final step extends to every later round.
class CapacityTimeline {
 public:
  CapacityTimeline() = default;
  explicit CapacityTimeline(std::vector<CapacityStep> steps)
      : steps_(std::move(steps)) {}

  static CapacityTimeline Constant(double value) {
    return CapacityTimeline({{0, value}});
  }

  double at(Round t) const;
  const std::vector<CapacityStep>& steps() const { return steps_; }

  // Same breakpoints, every value multiplied by k.
  CapacityTimeline Scaled(double k) const;

  friend bool operator==(const CapacityTimeline&,
                         const CapacityTimeline&) = default;

 private:
  std::vector<CapacityStep> steps_;
};

struct ResourceSpec {
  std::string id;
  CapacityTimeline capacity;
  friend bool operator==(const ResourceSpec&, const ResourceSpec&) = default;
};

// One end-to-end connection. hop_delays[i] is the number of rounds a packet
// still needs to reach the destination after passing route[i].
struct ConnectionSpec {
  std::string id;
  std::vector<std::string> route;
  double value = 1.0;
  Round start = 0;
  Round end = 0;
  Round total_delay = 0;
  std::vector<Round> hop_delays;
  double start_rate = 1.0;
  double alpha = 0.01;
  double beta = 0.1;

  RoundWindow active() const { return {start, end}; }
  // Rounds at which the cohorts sent during active() reach the destination.
  RoundWindow shifted_active() const {
    return {start + total_delay, end + total_delay};
  }
  Round duration() const { return active().size(); }

  friend bool operator==(const ConnectionSpec&,
                         const ConnectionSpec&) = default;
};

enum class LossPolicyKind { kProportional, kAdversarialFair };

struct LossPolicy {
  LossPolicyKind kind = LossPolicyKind::kProportional;
  std::uint64_t seed = 0;
  // Preferred victim of the adversary. When unset, or when the target does
  // not cross a congested resource, a victim is drawn from the seeded stream.
  std::optional<std::string> target_path;

  friend bool operator==(const LossPolicy&, const LossPolicy&) = default;
};

struct Scenario {
  std::vector<ResourceSpec> resources;
  std::vector<ConnectionSpec> connections;
  double epsilon = 0.1;
  LossPolicy loss_policy;

  // Last round the simulator runs: every in-flight cohort has resolved by then.
  // -1 when there are no connections.
  Round horizon() const;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

struct Violation {
  std::string subject;  // e.g. "connection 'p1'"
  std::string message;  // e.g. "alpha must be < beta"
  std::string ToString() const { return subject + ": " + message; }
  friend bool operator==(const Violation&, const Violation&) = default;
};

// Returns every invariant violation in the scenario; empty means valid.
std::vector<Violation> Validate(const Scenario& scenario);

// Throws ValidationError listing all violations if the scenario is invalid.
void RequireValid(const Scenario& scenario);

// Rounds between a packet leaving the source and transiting `resource_id`.
// Throws std::invalid_argument if the resource is not on the route.
Round PreDelay(const ConnectionSpec& connection, std::string_view resource_id);

struct Hop {
  std::size_t resource = 0;
  Round pre_delay = 0;
};

// A path crossing a resource: which path, at which hop of its route.
struct Incidence {
  std::size_t path = 0;
  std::size_t hop = 0;
  Round pre_delay = 0;
};

// Index-resolved view of a valid scenario shared by the kernel and solver.
class Topology {
 public:
  // Throws ValidationError if the scenario is invalid.
  explicit Topology(const Scenario& scenario);

  std::size_t num_paths() const { return routes_.size(); }
  std::size_t num_resources() const { return incidences_.size(); }

  const std::vector<Hop>& route(std::size_t path) const {
    return routes_[path];
  }
  const std::vector<Incidence>& incidences(std::size_t resource) const {
    return incidences_[resource];
  }
  // Resources ordered so that every same-round hop of every path is visited
  // after its predecessor on the route.
  const std::vector<std::size_t>& transit_order() const {
    return transit_order_;
  }

  std::optional<std::size_t> resource_index(std::string_view id) const;
  std::optional<std::size_t> path_index(std::string_view id) const;

 private:
  std::vector<std::string> resource_ids_;
  std::vector<std::string> path_ids_;
  std::vector<std::vector<Hop>> routes_;
  std::vector<std::vector<Incidence>> incidences_;
  std::vector<std::size_t> transit_order_;
};

}  // namespace lmimd

#endif  // LMIMD_SCENARIO_H_
