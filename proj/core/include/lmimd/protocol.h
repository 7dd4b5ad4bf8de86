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

// Sender side of the Linear MIMD rate controller.
//
// A connection with round-trip delay d sends its start rate for the first
// d+1 rounds (no feedback can have arrived yet). From then on, the rate in
// round t is the rate used d+1 rounds earlier scaled by
//
//     1 + alpha - beta * lsr(t-1)
//
// where lsr(t-1) is the fraction of the cohort that arrived (or failed to)
// in round t-1. Because the update reaches back d+1 rounds, rounds split into
// d+1 interleaved threads that evolve independently; one flat history covers
// all of them.

#ifndef LMIMD_PROTOCOL_H_
#define LMIMD_PROTOCOL_H_

#include <optional>
#include <vector>

#include "lmimd/scenario.h"

namespace lmimd {

// Loss ratios below -kLsrResidue are treated as accounting errors; anything
// in [-kLsrResidue, 0) is floating-point residue and clamps to 0.
inline constexpr double kLsrResidue = 1e-12;

class PathState {
 public:
  // `connection` must outlive the state.
  explicit PathState(const ConnectionSpec& connection);

  const ConnectionSpec& connection() const { return *conn_; }

  bool InWarmUp(Round t) const;

  // f_0 for t in [start, start + total_delay]; ProtocolError otherwise.
  double InitialRate(Round t) const;

  // sent(t-1-d) * (1 + alpha - beta * lsr(t-1)) for t in
  // [start + 1 + d, end]. ProtocolError if history is missing.
  double UpdateRate(Round t) const;

  // InitialRate or UpdateRate, whichever applies to t in active().
  double NextRate(Round t) const;

  // Appends sent(t). Rounds must be recorded in order starting at start.
  void RecordSent(Round t, double amount);

  // Records lsr(t) from the amount received in round t and returns it.
  // Rounds must be recorded in order starting at start + total_delay.
  double RecordFeedback(Round t, double received);

  std::optional<double> sent(Round t) const;
  std::optional<double> lsr(Round t) const;

 private:
  const ConnectionSpec* conn_;
  std::vector<double> sent_;  // index t - start
  std::vector<double> lsr_;   // index t - (start + total_delay)
};

}  // namespace lmimd

#endif  // LMIMD_PROTOCOL_H_
