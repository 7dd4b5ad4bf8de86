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

#ifndef LMIMD_SIMPLEX_H_
#define LMIMD_SIMPLEX_H_

#include <vector>

namespace lmimd {

// maximize objective . x  subject to  rows x <= bounds,  x >= 0,
// with bounds >= 0 so the origin is a feasible starting vertex.
struct PackingLp {
  std::vector<double> objective;
  std::vector<std::vector<double>> rows;
  std::vector<double> bounds;
};

enum class LpStatus { kOptimal, kUnbounded };

struct LpResult {
  LpStatus status = LpStatus::kOptimal;
  std::vector<double> x;
  std::vector<double> dual;  // one multiplier per row, >= 0
  double value = 0.0;        // objective . x
  double dual_value = 0.0;   // bounds . dual
};

// Dense tableau primal simplex with Bland's rule (no cycling on the
// degenerate zero-capacity rows this model produces). Intended for the small
// LPs left after constraint deduplication.
LpResult SolvePackingLp(const PackingLp& lp);

}  // namespace lmimd

#endif  // LMIMD_SIMPLEX_H_
