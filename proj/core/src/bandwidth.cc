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

#include "lmimd/bandwidth.h"

#include <algorithm>
#include <cmath>

#include "json.hpp"
#include "lmimd/errors.h"
#include "lmimd/optimum.h"
#include "lmimd/simulator.h"

namespace lmimd {

Scenario BandwidthTestScenario(const Scenario& scenario) {
  Scenario s = scenario;
  for (auto& c : s.connections) {
    if (c.start != s.connections.front().start ||
        c.end != s.connections.front().end) {
      throw ValidationError(
          "bandwidth test requires every connection to share one active "
          "interval");
    }
    c.value = 1.0;
    c.alpha = s.epsilon * c.beta;
  }
  return s;
}

BandwidthEstimate EstimateBandwidth(const Scenario& scenario) {
  const Scenario s = BandwidthTestScenario(scenario);
  BandwidthEstimate out;
  if (s.connections.empty()) {
    out.converged = true;
    out.opt_rate = 0.0;
    return out;
  }

  double window = 1.0;
  Round first_full = 0;
  for (const auto& c : s.connections) {
    window = std::max(window, (1.0 + static_cast<double>(c.total_delay)) /
                                  (c.beta * s.epsilon));
    first_full = std::max(first_full, c.start + c.total_delay);
  }
  out.window = static_cast<Round>(std::ceil(window));
  const Round w = out.window;

  Simulator sim(s);
  // prefix[i] = aggregate received over rounds [first_full, first_full + i).
  std::vector<double> prefix{0.0};
  auto mean = [&](std::size_t from, std::size_t to) {
    return (prefix[to] - prefix[from]) / static_cast<double>(to - from);
  };
  while (!sim.done()) {
    const Round t = sim.round();
    sim.Step();
    if (t < first_full) continue;
    prefix.push_back(prefix.back() + sim.WeightedReceived(t));
    const std::size_t n = prefix.size() - 1;
    if (n < static_cast<std::size_t>(2 * w)) continue;
    const double recent = mean(n - w, n);
    const double before = mean(n - 2 * w, n - w);
    out.estimate = recent;
    if (std::abs(recent - before) <=
        kBandwidthSettleTolerance * std::max(before, 1e-300)) {
      out.converged = true;
      break;
    }
  }
  if (!out.converged) {
    // Horizon reached first: report the longest trailing window available.
    const std::size_t n = prefix.size() - 1;
    if (n > 0) {
      const std::size_t len = std::min<std::size_t>(n, static_cast<std::size_t>(w));
      out.estimate = mean(n - len, n);
    }
  }
  out.rounds_run = sim.round();

  try {
    const auto opt = SolveOpt(s);
    double total = 0.0;
    for (double f : opt.rates) total += f;
    out.opt_rate = total;
  } catch (const UnboundedError& e) {
    out.opt_error = e.what();
  }
  return out;
}

std::string BandwidthJson(const BandwidthEstimate& e) {
  nlohmann::ordered_json doc;
  doc["estimate"] = e.estimate;
  doc["converged"] = e.converged;
  doc["window"] = e.window;
  doc["rounds_run"] = e.rounds_run;
  if (e.opt_rate) {
    doc["opt_rate"] = *e.opt_rate;
  } else {
    doc["opt_rate"] = nullptr;
    doc["opt_error"] = e.opt_error;
  }
  return doc.dump(2) + "\n";
}

}  // namespace lmimd
