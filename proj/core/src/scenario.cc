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

#include "lmimd/scenario.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include <fmt/format.h>

#include "lmimd/errors.h"

namespace lmimd {
namespace {

std::string ResourceSubject(const ResourceSpec& r) {
  return fmt::format("resource '{}'", r.id);
}

std::string ConnectionSubject(const ConnectionSpec& c) {
  return fmt::format("connection '{}'", c.id);
}

// Ids double as output file names.
bool SafeId(const std::string& id) {
  if (id.empty()) return false;
  return std::all_of(id.begin(), id.end(), [](char ch) {
    return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' ||
           ch == '-' || ch == '.';
  });
}

void ValidateResource(const ResourceSpec& r, std::vector<Violation>& out) {
  const std::string subject = ResourceSubject(r);
  if (!SafeId(r.id)) {
    out.push_back({subject, "id must be non-empty [A-Za-z0-9_.-]"});
  }
  const auto& steps = r.capacity.steps();
  if (steps.empty()) {
    out.push_back({subject, "capacity timeline is empty"});
    return;
  }
  if (steps.front().from_round != 0) {
    out.push_back({subject, "capacity timeline must start at round 0"});
  }
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (std::isnan(steps[i].value) || steps[i].value < 0.0) {
      out.push_back({subject, fmt::format("capacity step {} is negative", i)});
    }
    if (i > 0 && steps[i].from_round <= steps[i - 1].from_round) {
      out.push_back(
          {subject, fmt::format("capacity step {} is not after step {}", i,
                                i - 1)});
    }
  }
}

void ValidateConnection(const ConnectionSpec& c,
                        const std::set<std::string>& resource_ids,
                        std::vector<Violation>& out) {
  const std::string subject = ConnectionSubject(c);
  if (!SafeId(c.id)) {
    out.push_back({subject, "id must be non-empty [A-Za-z0-9_.-]"});
  }
  if (c.route.empty()) out.push_back({subject, "route is empty"});

  std::set<std::string> seen;
  for (const auto& rid : c.route) {
    if (!resource_ids.contains(rid)) {
      out.push_back({subject, fmt::format("unknown resource '{}'", rid)});
    }
    if (!seen.insert(rid).second) {
      out.push_back({subject, fmt::format("route visits '{}' twice", rid)});
    }
  }

  if (!(c.value >= 0.0 && c.value <= 1.0)) {
    out.push_back({subject, "value must be in [0,1]"});
  }
  if (c.start < 0) out.push_back({subject, "start must be >= 0"});
  if (c.end < c.start) out.push_back({subject, "active interval is empty"});
  if (c.total_delay < 0) out.push_back({subject, "total_delay must be >= 0"});

  if (c.hop_delays.size() != c.route.size()) {
    out.push_back({subject, "hop_delays must have one entry per route hop"});
  } else {
    Round max_hop = 0;
    for (Round d : c.hop_delays) {
      if (d < 0) out.push_back({subject, "hop delay must be >= 0"});
      max_hop = std::max(max_hop, d);
    }
    if (max_hop > c.total_delay) {
      out.push_back({subject, "delay bound: total_delay < max hop delay"});
    }
    for (std::size_t i = 1; i < c.hop_delays.size(); ++i) {
      if (c.hop_delays[i] > c.hop_delays[i - 1]) {
        out.push_back(
            {subject, fmt::format("pre-delay decreases at hop {}", i)});
      }
    }
  }

  if (!(c.start_rate > 0.0) || !std::isfinite(c.start_rate)) {
    out.push_back({subject, "start_rate must be positive and finite"});
  }
  if (!(c.alpha > 0.0)) out.push_back({subject, "alpha must be > 0"});
  if (!(c.beta > 0.0 && c.beta < 1.0)) {
    out.push_back({subject, "beta must be in (0,1)"});
  }
  if (!(c.alpha < c.beta)) out.push_back({subject, "alpha must be < beta"});
}

// Orders resources so that consecutive hops a->b of any path with equal
// pre-delay (both transited in the same round) have a before b. Returns
// nullopt if those constraints are cyclic. Assumes routes resolve.
std::optional<std::vector<std::size_t>> SameRoundOrder(
    std::size_t num_resources,
    const std::vector<std::vector<Hop>>& routes) {
  std::vector<std::set<std::size_t>> succ(num_resources);
  for (const auto& route : routes) {
    for (std::size_t i = 1; i < route.size(); ++i) {
      if (route[i].pre_delay == route[i - 1].pre_delay) {
        succ[route[i - 1].resource].insert(route[i].resource);
      }
    }
  }
  std::vector<int> indegree(num_resources, 0);
  for (const auto& s : succ) {
    for (std::size_t v : s) ++indegree[v];
  }
  // Kahn's algorithm; the ordered ready set keeps the result canonical.
  std::set<std::size_t> ready;
  for (std::size_t v = 0; v < num_resources; ++v) {
    if (indegree[v] == 0) ready.insert(v);
  }
  std::vector<std::size_t> order;
  order.reserve(num_resources);
  while (!ready.empty()) {
    std::size_t v = *ready.begin();
    ready.erase(ready.begin());
    order.push_back(v);
    for (std::size_t w : succ[v]) {
      if (--indegree[w] == 0) ready.insert(w);
    }
  }
  if (order.size() != num_resources) return std::nullopt;
  return order;
}

std::vector<std::vector<Hop>> ResolveRoutes(
    const Scenario& scenario,
    const std::map<std::string, std::size_t, std::less<>>& index) {
  std::vector<std::vector<Hop>> routes;
  routes.reserve(scenario.connections.size());
  for (const auto& c : scenario.connections) {
    std::vector<Hop> hops;
    hops.reserve(c.route.size());
    for (std::size_t i = 0; i < c.route.size(); ++i) {
      hops.push_back({index.at(c.route[i]), c.total_delay - c.hop_delays[i]});
    }
    routes.push_back(std::move(hops));
  }
  return routes;
}

}  // namespace

double CapacityTimeline::at(Round t) const {
  auto it = std::upper_bound(
      steps_.begin(), steps_.end(), t,
      [](Round r, const CapacityStep& s) { return r < s.from_round; });
  if (it == steps_.begin()) return steps_.empty() ? 0.0 : steps_.front().value;
  return std::prev(it)->value;
}

CapacityTimeline CapacityTimeline::Scaled(double k) const {
  std::vector<CapacityStep> steps = steps_;
  for (auto& s : steps) s.value *= k;
  return CapacityTimeline(std::move(steps));
}

Round Scenario::horizon() const {
  Round h = -1;
  for (const auto& c : connections) h = std::max(h, c.end + c.total_delay);
  return h;
}

std::vector<Violation> Validate(const Scenario& scenario) {
  std::vector<Violation> out;
  if (!(scenario.epsilon > 0.0 && scenario.epsilon < 1.0)) {
    out.push_back({"scenario", "epsilon must be in (0,1)"});
  }

  std::set<std::string> resource_ids;
  for (const auto& r : scenario.resources) {
    ValidateResource(r, out);
    if (!resource_ids.insert(r.id).second) {
      out.push_back({ResourceSubject(r), "duplicate resource id"});
    }
  }

  std::set<std::string> path_ids;
  for (const auto& c : scenario.connections) {
    ValidateConnection(c, resource_ids, out);
    if (!path_ids.insert(c.id).second) {
      out.push_back({ConnectionSubject(c), "duplicate connection id"});
    }
  }

  const auto& policy = scenario.loss_policy;
  if (policy.kind == LossPolicyKind::kAdversarialFair && policy.target_path &&
      !path_ids.contains(*policy.target_path)) {
    out.push_back({"loss_policy", fmt::format("unknown target path '{}'",
                                              *policy.target_path)});
  }

  // The same-round transit order is only meaningful once routes resolve.
  if (out.empty()) {
    std::map<std::string, std::size_t, std::less<>> index;
    for (std::size_t i = 0; i < scenario.resources.size(); ++i) {
      index.emplace(scenario.resources[i].id, i);
    }
    if (!SameRoundOrder(scenario.resources.size(),
                        ResolveRoutes(scenario, index))) {
      out.push_back({"scenario",
                     "same-round hop order is cyclic across connections"});
    }
  }
  return out;
}

void RequireValid(const Scenario& scenario) {
  const auto violations = Validate(scenario);
  if (violations.empty()) return;
  std::string msg = "invalid scenario:";
  for (const auto& v : violations) msg += "\n  " + v.ToString();
  throw ValidationError(msg);
}

Round PreDelay(const ConnectionSpec& connection, std::string_view resource_id) {
  for (std::size_t i = 0; i < connection.route.size(); ++i) {
    if (connection.route[i] == resource_id) {
      if (i >= connection.hop_delays.size()) break;
      return connection.total_delay - connection.hop_delays[i];
    }
  }
  throw std::invalid_argument(fmt::format(
      "resource '{}' is not on the route of connection '{}'", resource_id,
      connection.id));
}

Topology::Topology(const Scenario& scenario) {
  RequireValid(scenario);
  std::map<std::string, std::size_t, std::less<>> index;
  for (std::size_t i = 0; i < scenario.resources.size(); ++i) {
    resource_ids_.push_back(scenario.resources[i].id);
    index.emplace(scenario.resources[i].id, i);
  }
  for (const auto& c : scenario.connections) path_ids_.push_back(c.id);

  routes_ = ResolveRoutes(scenario, index);
  incidences_.resize(scenario.resources.size());
  for (std::size_t p = 0; p < routes_.size(); ++p) {
    for (std::size_t h = 0; h < routes_[p].size(); ++h) {
      incidences_[routes_[p][h].resource].push_back(
          {p, h, routes_[p][h].pre_delay});
    }
  }
  transit_order_ = *SameRoundOrder(scenario.resources.size(), routes_);
}

std::optional<std::size_t> Topology::resource_index(std::string_view id) const {
  auto it = std::find(resource_ids_.begin(), resource_ids_.end(), id);
  if (it == resource_ids_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - resource_ids_.begin());
}

std::optional<std::size_t> Topology::path_index(std::string_view id) const {
  auto it = std::find(path_ids_.begin(), path_ids_.end(), id);
  if (it == path_ids_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - path_ids_.begin());
}

}  // namespace lmimd
