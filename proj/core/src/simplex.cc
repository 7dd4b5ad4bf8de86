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

#include "lmimd/simplex.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lmimd {
namespace {

constexpr double kPivotTolerance = 1e-12;

}  // namespace

LpResult SolvePackingLp(const PackingLp& lp) {
  const std::size_t n = lp.objective.size();
  const std::size_t m = lp.rows.size();
  if (lp.bounds.size() != m) {
    throw std::invalid_argument("one bound per row required");
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (lp.rows[i].size() != n) {
      throw std::invalid_argument("row width differs from objective");
    }
    if (!(lp.bounds[i] >= 0.0) || !std::isfinite(lp.bounds[i])) {
      throw std::invalid_argument("bounds must be finite and non-negative");
    }
  }

  // Tableau rows 0..m-1 are [A | I | b]; row m holds reduced costs
  // [-c | 0 | value].
  const std::size_t width = n + m + 1;
  std::vector<double> tab((m + 1) * width, 0.0);
  auto at = [&](std::size_t i, std::size_t j) -> double& {
    return tab[i * width + j];
  };
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) at(i, j) = lp.rows[i][j];
    at(i, n + i) = 1.0;
    at(i, width - 1) = lp.bounds[i];
  }
  double cmax = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    at(m, j) = -lp.objective[j];
    cmax = std::max(cmax, std::abs(lp.objective[j]));
  }
  const double cost_tol = 1e-11 * std::max(1.0, cmax);

  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

  LpResult result;
  for (;;) {
    std::size_t enter = width;
    for (std::size_t j = 0; j + 1 < width; ++j) {
      if (at(m, j) < -cost_tol) {
        enter = j;
        break;
      }
    }
    if (enter == width) break;

    std::size_t leave = m;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
      const double a = at(i, enter);
      if (a <= kPivotTolerance) continue;
      const double ratio = at(i, width - 1) / a;
      if (ratio < best ||
          (leave != m && ratio == best && basis[i] < basis[leave])) {
        best = ratio;
        leave = i;
      }
    }
    if (leave == m) {
      result.status = LpStatus::kUnbounded;
      return result;
    }

    const double pivot = at(leave, enter);
    for (std::size_t j = 0; j < width; ++j) at(leave, j) /= pivot;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == leave) continue;
      const double factor = at(i, enter);
      if (factor == 0.0) continue;
      for (std::size_t j = 0; j < width; ++j) {
        at(i, j) -= factor * at(leave, j);
      }
      at(i, enter) = 0.0;
    }
    basis[leave] = enter;
  }

  result.x.assign(n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < n) result.x[basis[i]] = std::max(0.0, at(i, width - 1));
  }
  result.dual.assign(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    result.dual[i] = std::max(0.0, at(m, n + i));
  }
  for (std::size_t j = 0; j < n; ++j) {
    result.value += lp.objective[j] * result.x[j];
  }
  for (std::size_t i = 0; i < m; ++i) {
    result.dual_value += lp.bounds[i] * result.dual[i];
  }
  return result;
}

}  // namespace lmimd
