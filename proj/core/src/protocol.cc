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

#include "lmimd/protocol.h"

#include <fmt/format.h>

#include "lmimd/errors.h"

namespace lmimd {

PathState::PathState(const ConnectionSpec& connection) : conn_(&connection) {
  sent_.reserve(static_cast<std::size_t>(connection.duration()));
  lsr_.reserve(static_cast<std::size_t>(connection.duration()));
}

bool PathState::InWarmUp(Round t) const {
  return t >= conn_->start && t <= conn_->start + conn_->total_delay;
}

double PathState::InitialRate(Round t) const {
  if (!InWarmUp(t)) {
    throw ProtocolError(fmt::format(
        "connection '{}': round {} is outside the warm-up window [{}, {}]",
        conn_->id, t, conn_->start, conn_->start + conn_->total_delay));
  }
  return conn_->start_rate;
}

double PathState::UpdateRate(Round t) const {
  const Round d = conn_->total_delay;
  if (t < conn_->start + 1 + d || t > conn_->end) {
    throw ProtocolError(fmt::format(
        "connection '{}': round {} is not an update round", conn_->id, t));
  }
  const auto base = sent(t - 1 - d);
  const auto loss = lsr(t - 1);
  if (!base || !loss) {
    throw ProtocolError(fmt::format(
        "connection '{}': history for round {} is missing", conn_->id, t));
  }
  if (*loss < 0.0 || *loss > 1.0) {
    throw ProtocolError(fmt::format(
        "connection '{}': loss ratio {} outside [0,1]", conn_->id, *loss));
  }
  return *base * (1.0 + conn_->alpha - conn_->beta * *loss);
}

double PathState::NextRate(Round t) const {
  return InWarmUp(t) ? InitialRate(t) : UpdateRate(t);
}

void PathState::RecordSent(Round t, double amount) {
  if (t != conn_->start + static_cast<Round>(sent_.size()) || t > conn_->end) {
    throw ProtocolError(fmt::format(
        "connection '{}': sent recorded out of order at round {}", conn_->id,
        t));
  }
  sent_.push_back(amount);
}

double PathState::RecordFeedback(Round t, double received) {
  const Round first = conn_->start + conn_->total_delay;
  if (t != first + static_cast<Round>(lsr_.size())) {
    throw ProtocolError(fmt::format(
        "connection '{}': feedback recorded out of order at round {}",
        conn_->id, t));
  }
  const auto base = sent(t - conn_->total_delay);
  if (!base || !(*base > 0.0)) {
    throw ProtocolError(fmt::format(
        "connection '{}': no positive send for the cohort arriving at {}",
        conn_->id, t));
  }
  if (received < 0.0) {
    throw ProtocolError(fmt::format(
        "connection '{}': negative amount received at round {}", conn_->id,
        t));
  }
  double ratio = (*base - received) / *base;
  if (ratio < 0.0) {
    if (ratio < -kLsrResidue) {
      throw ProtocolError(fmt::format(
          "connection '{}': received {} exceeds sent {} at round {}",
          conn_->id, received, *base, t));
    }
    ratio = 0.0;
  }
  lsr_.push_back(ratio);
  return ratio;
}

std::optional<double> PathState::sent(Round t) const {
  const Round i = t - conn_->start;
  if (i < 0 || i >= static_cast<Round>(sent_.size())) return std::nullopt;
  return sent_[static_cast<std::size_t>(i)];
}

std::optional<double> PathState::lsr(Round t) const {
  const Round i = t - conn_->start - conn_->total_delay;
  if (i < 0 || i >= static_cast<Round>(lsr_.size())) return std::nullopt;
  return lsr_[static_cast<std::size_t>(i)];
}

}  // namespace lmimd
