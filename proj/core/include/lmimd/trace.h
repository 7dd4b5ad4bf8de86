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

#ifndef LMIMD_TRACE_H_
#define LMIMD_TRACE_H_

#include <cstddef>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "lmimd/scenario.h"

namespace lmimd {

// Time series of one connection. `sent` is indexed by t - active.first,
// `rcvd`, `lost` and `lsr` by t - arrivals.first.
struct PathTrace {
  RoundWindow active;
  RoundWindow arrivals;
  std::vector<double> sent;
  std::vector<double> rcvd;
  std::vector<double> lost;
  std::vector<double> lsr;

  // Zero outside the respective window.
  double sent_at(Round t) const;
  double rcvd_at(Round t) const;
  double lost_at(Round t) const;

  friend bool operator==(const PathTrace&, const PathTrace&) = default;
};

// Per-round ledger of one resource over rounds [0, horizon]. The per-path
// columns are laid out as [t * paths.size() + k] for the k-th path in
// `paths`; a path not transiting at t has zeros there.
struct ResourceTrace {
  std::vector<double> into;
  std::vector<double> lost;
  std::vector<double> cap;
  std::vector<std::size_t> paths;
  std::vector<double> path_into;
  std::vector<double> path_lost;

  double ratio_at(Round t) const;  // lost/into, 0 when into == 0

  friend bool operator==(const ResourceTrace&, const ResourceTrace&) = default;
};

struct RunTrace {
  std::shared_ptr<const Scenario> scenario;
  Round horizon = -1;
  std::vector<PathTrace> paths;
  std::vector<ResourceTrace> resources;
};

// `round,sent,rcvd,lost,lsr` for rounds active.first .. arrivals.last.
// Values undefined at a round (sent outside the active window, arrivals
// before the first cohort lands) are left empty.
std::string PathCsv(const PathTrace& path);

// `round,into,lost,cap` for rounds 0 .. horizon.
std::string ResourceCsv(const ResourceTrace& resource);

// Writes path_<id>.csv and resource_<id>.csv into `dir` (created if needed).
void WriteTraceCsv(const RunTrace& trace, const std::filesystem::path& dir);

// Shortest decimal form that parses back to the same double.
std::string FormatNumber(double x);

}  // namespace lmimd

#endif  // LMIMD_TRACE_H_
