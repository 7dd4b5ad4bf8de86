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

#include "lmimd/loss_policy.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lmimd {
namespace {

// Relative margin kept below the exact fairness headroom so that rounding in
// the auditor's independent recomputation cannot push a path over budget.
constexpr double kHeadroomMargin = 1e-12;

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double Total(std::span<const Contribution> contributions) {
  double total = 0.0;
  for (const auto& c : contributions) {
    if (c.amount < 0.0 || std::isnan(c.amount)) {
      throw std::invalid_argument("negative contribution");
    }
    total += c.amount;
  }
  return total;
}

}  // namespace

std::uint64_t CounterDraw(std::uint64_t seed, std::uint64_t a,
                          std::uint64_t b) {
  return SplitMix64(SplitMix64(SplitMix64(seed) ^ a) ^ b);
}

std::vector<double> ProportionalLoss(std::span<const Contribution> contributions,
                                     double cap) {
  if (cap < 0.0) throw std::invalid_argument("negative capacity");
  const double total = Total(contributions);
  std::vector<double> losses(contributions.size(), 0.0);
  if (!(total > cap)) return losses;
  const double ratio = (total - cap) / total;
  for (std::size_t i = 0; i < contributions.size(); ++i) {
    losses[i] = contributions[i].amount * ratio;
  }
  return losses;
}

std::vector<double> BiasedLoss(std::span<const Contribution> contributions,
                               double cap, std::size_t victim,
                               double victim_limit) {
  if (cap < 0.0) throw std::invalid_argument("negative capacity");
  const double total = Total(contributions);
  std::vector<double> losses(contributions.size(), 0.0);
  if (!(total > cap)) return losses;
  const double excess = total - cap;
  const double carried = contributions[victim].amount;
  const double fair_share = carried * (excess / total);
  const double x =
      std::clamp(victim_limit, fair_share, std::min(carried, excess));
  losses[victim] = x;

  const double others = total - carried;
  if (others > 0.0) {
    const double ratio = std::min(1.0, (excess - x) / others);
    for (std::size_t i = 0; i < contributions.size(); ++i) {
      if (i != victim) losses[i] = contributions[i].amount * ratio;
    }
  }
  return losses;
}

double FairnessBudget::Headroom(std::size_t path, double cohort_sent,
                                double ratio, double epsilon) const {
  const double allowed =
      (1.0 + epsilon) * (ratio_sum_[path] + ratio) - lost_fraction_[path];
  return cohort_sent * allowed * (1.0 - kHeadroomMargin);
}

void FairnessBudget::Charge(std::size_t path, double loss, double cohort_sent,
                            double ratio) {
  lost_fraction_[path] += loss / cohort_sent;
  ratio_sum_[path] += ratio;
}

LossAllocator::LossAllocator(const Scenario& scenario,
                             const Topology& topology)
    : kind_(scenario.loss_policy.kind),
      seed_(scenario.loss_policy.seed),
      epsilon_(scenario.epsilon),
      budget_(topology.num_paths()) {
  if (scenario.loss_policy.target_path) {
    target_ = topology.path_index(*scenario.loss_policy.target_path);
  }
}

std::vector<double> LossAllocator::Allocate(
    std::span<const Contribution> contributions, double cap, Round round,
    std::size_t resource) {
  const double total = Total(contributions);
  const double ratio = total > cap ? (total - cap) / total : 0.0;

  std::vector<double> losses;
  if (kind_ == LossPolicyKind::kProportional || ratio == 0.0) {
    losses = ProportionalLoss(contributions, cap);
  } else {
    std::optional<std::size_t> victim;
    if (target_) {
      for (std::size_t i = 0; i < contributions.size(); ++i) {
        if (contributions[i].path == *target_ && contributions[i].amount > 0) {
          victim = i;
        }
      }
    } else {
      std::vector<std::size_t> candidates;
      for (std::size_t i = 0; i < contributions.size(); ++i) {
        if (contributions[i].amount > 0) candidates.push_back(i);
      }
      if (!candidates.empty()) {
        const auto draw = CounterDraw(seed_, static_cast<std::uint64_t>(round),
                                      resource);
        victim = candidates[draw % candidates.size()];
      }
    }
    if (victim) {
      const auto& c = contributions[*victim];
      losses = BiasedLoss(
          contributions, cap, *victim,
          budget_.Headroom(c.path, c.cohort_sent, ratio, epsilon_));
    } else {
      losses = ProportionalLoss(contributions, cap);
    }
  }

  for (std::size_t i = 0; i < contributions.size(); ++i) {
    budget_.Charge(contributions[i].path, losses[i],
                   contributions[i].cohort_sent, ratio);
  }
  return losses;
}

}  // namespace lmimd
