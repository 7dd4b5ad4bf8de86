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

#include "lmimd/simulator.h"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "lmimd/errors.h"

namespace lmimd {
namespace {

bool Close(double a, double b, double scale) {
  return std::abs(a - b) <= kConservationTolerance * std::max(1.0, scale);
}

}  // namespace

Simulator::Simulator(Scenario scenario)
    : scenario_(std::make_shared<const Scenario>(std::move(scenario))),
      topology_(*scenario_),
      allocator_(*scenario_, topology_) {
  const Scenario& s = *scenario_;
  trace_.scenario = scenario_;
  trace_.horizon = s.horizon();
  const auto rounds = static_cast<std::size_t>(trace_.horizon + 1);

  states_.reserve(s.connections.size());
  for (const auto& c : s.connections) {
    states_.emplace_back(c);
    const auto n = static_cast<std::size_t>(c.duration());
    cohorts_.push_back({std::vector<double>(n, 0.0),
                        std::vector<double>(n, 0.0),
                        std::vector<std::size_t>(n, 0)});
    PathTrace pt;
    pt.active = c.active();
    pt.arrivals = c.shifted_active();
    pt.sent.reserve(n);
    pt.rcvd.reserve(n);
    pt.lost.reserve(n);
    pt.lsr.reserve(n);
    trace_.paths.push_back(std::move(pt));
  }

  for (std::size_t r = 0; r < s.resources.size(); ++r) {
    ResourceTrace rt;
    for (const auto& inc : topology_.incidences(r)) rt.paths.push_back(inc.path);
    rt.into.assign(rounds, 0.0);
    rt.lost.assign(rounds, 0.0);
    rt.cap.assign(rounds, 0.0);
    rt.path_into.assign(rounds * rt.paths.size(), 0.0);
    rt.path_lost.assign(rounds * rt.paths.size(), 0.0);
    trace_.resources.push_back(std::move(rt));
  }
}

void Simulator::EmitSources(Round t) {
  const Scenario& s = *scenario_;
  for (std::size_t p = 0; p < s.connections.size(); ++p) {
    const auto& c = s.connections[p];
    if (!c.active().contains(t)) continue;
    const double rate = states_[p].NextRate(t);
    states_[p].RecordSent(t, rate);
    trace_.paths[p].sent.push_back(rate);
    const auto i = static_cast<std::size_t>(t - c.start);
    cohorts_[p].remaining[i] = rate;
  }
}

void Simulator::TransitResources(Round t) {
  const Scenario& s = *scenario_;
  const auto ti = static_cast<std::size_t>(t);
  for (std::size_t r : topology_.transit_order()) {
    const auto& incidences = topology_.incidences(r);
    contributions_.clear();
    slots_.clear();
    for (std::size_t k = 0; k < incidences.size(); ++k) {
      const auto& inc = incidences[k];
      const auto& c = s.connections[inc.path];
      const Round sent_round = t - inc.pre_delay;
      if (!c.active().contains(sent_round)) continue;
      const auto i = static_cast<std::size_t>(sent_round - c.start);
      auto& cohorts = cohorts_[inc.path];
      if (cohorts.next_hop[i] != inc.hop) {
        throw ConservationError(fmt::format(
            "connection '{}': cohort {} reached hop {} out of order", c.id,
            sent_round, inc.hop));
      }
      contributions_.push_back({inc.path, cohorts.remaining[i],
                                trace_.paths[inc.path].sent[i]});
      slots_.push_back(k);
    }

    ResourceTrace& ledger = trace_.resources[r];
    const double cap = s.resources[r].capacity.at(t);
    double into = 0.0;
    for (const auto& c : contributions_) into += c.amount;
    const double lost = into > cap ? into - cap : 0.0;
    ledger.into[ti] = into;
    ledger.lost[ti] = lost;
    ledger.cap[ti] = cap;
    if (contributions_.empty()) continue;

    const auto losses = allocator_.Allocate(contributions_, cap, t, r);
    double allocated = 0.0;
    const std::size_t width = ledger.paths.size();
    for (std::size_t j = 0; j < contributions_.size(); ++j) {
      const auto& contrib = contributions_[j];
      const double loss = losses[j];
      if (loss < 0.0 || loss > contrib.amount * (1.0 + 1e-15)) {
        throw ConservationError(fmt::format(
            "resource '{}': loss {} outside [0, {}] at round {}",
            s.resources[r].id, loss, contrib.amount, t));
      }
      allocated += loss;
      const auto& c = s.connections[contrib.path];
      const auto i = static_cast<std::size_t>(
          t - incidences[slots_[j]].pre_delay - c.start);
      auto& cohorts = cohorts_[contrib.path];
      cohorts.remaining[i] = std::max(0.0, contrib.amount - loss);
      cohorts.hop_loss[i] += loss;
      cohorts.next_hop[i] += 1;
      ledger.path_into[ti * width + slots_[j]] = contrib.amount;
      ledger.path_lost[ti * width + slots_[j]] = loss;
    }
    if (!Close(allocated, lost, into)) {
      throw ConservationError(fmt::format(
          "resource '{}': allocated {} but discarded {} at round {}",
          s.resources[r].id, allocated, lost, t));
    }
  }
}

void Simulator::DeliverArrivals(Round t) {
  const Scenario& s = *scenario_;
  for (std::size_t p = 0; p < s.connections.size(); ++p) {
    const auto& c = s.connections[p];
    if (!c.shifted_active().contains(t)) continue;
    const auto i = static_cast<std::size_t>(t - c.total_delay - c.start);
    auto& cohorts = cohorts_[p];
    if (cohorts.next_hop[i] != c.route.size()) {
      throw ConservationError(fmt::format(
          "connection '{}': cohort {} arrived after {} of {} hops", c.id,
          t - c.total_delay, cohorts.next_hop[i], c.route.size()));
    }
    PathTrace& pt = trace_.paths[p];
    const double sent = pt.sent[i];
    const double rcvd = cohorts.remaining[i];
    const double lost = sent - rcvd;
    if (!Close(lost, cohorts.hop_loss[i], sent)) {
      throw ConservationError(fmt::format(
          "connection '{}': cohort {} lost {} but hops discarded {}", c.id,
          t - c.total_delay, lost, cohorts.hop_loss[i]));
    }
    pt.rcvd.push_back(rcvd);
    pt.lost.push_back(lost);
    pt.lsr.push_back(states_[p].RecordFeedback(t, rcvd));
  }
}

void Simulator::Step() {
  if (done()) return;
  const Round t = round_;
  EmitSources(t);
  TransitResources(t);
  DeliverArrivals(t);
  ++round_;
}

double Simulator::WeightedReceived(Round t) const {
  double total = 0.0;
  for (std::size_t p = 0; p < trace_.paths.size(); ++p) {
    total += scenario_->connections[p].value * trace_.paths[p].rcvd_at(t);
  }
  return total;
}

RunTrace Simulator::Finish() && {
  while (!done()) Step();

  double path_lost = 0.0;
  double sent = 0.0;
  for (const auto& pt : trace_.paths) {
    for (double x : pt.lost) path_lost += x;
    for (double x : pt.sent) sent += x;
  }
  double resource_lost = 0.0;
  for (const auto& rt : trace_.resources) {
    for (double x : rt.lost) resource_lost += x;
  }
  if (!Close(path_lost, resource_lost, sent)) {
    throw ConservationError(fmt::format(
        "paths observed {} lost but resources discarded {}", path_lost,
        resource_lost));
  }
  return std::move(trace_);
}

RunTrace Simulate(const Scenario& scenario) {
  return Simulator(scenario).Finish();
}

}  // namespace lmimd
