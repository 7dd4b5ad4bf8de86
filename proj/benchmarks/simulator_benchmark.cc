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


#include <random>

#include <benchmark/benchmark.h>

#include "lmimd/audit.h"
#include "lmimd/simulator.h"
#include "random_scenario.h"

namespace lmimd {
namespace {

Scenario Chain(int paths, Round rounds, LossPolicyKind policy) {
  Scenario s;
  s.loss_policy.kind = policy;
  for (int r = 0; r < 5; ++r) {
    s.resources.push_back(
        {"r" + std::to_string(r), CapacityTimeline::Constant(40.0 + 10 * r)});
  }
  for (int p = 0; p < paths; ++p) {
    ConnectionSpec c = testing::Connection(
        "p" + std::to_string(p),
        {"r" + std::to_string(p % 5), "r" + std::to_string((p + 1) % 5)}, 0,
        rounds - 1);
    c.total_delay = 1 + p % 3;
    c.hop_delays = {c.total_delay, 0};
    s.connections.push_back(c);
  }
  return s;
}

void BM_Simulate(benchmark::State& state) {
  const Scenario s = Chain(static_cast<int>(state.range(0)), state.range(1),
                           static_cast<LossPolicyKind>(state.range(2)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(Simulate(s));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) *
                          state.range(1));
}
BENCHMARK(BM_Simulate)
    ->Args({10, 10000, 0})
    ->Args({10, 10000, 1})
    ->Args({40, 10000, 0})
    ->Unit(benchmark::kMillisecond);

void BM_Audit(benchmark::State& state) {
  const RunTrace trace = Simulate(Chain(10, 10000, LossPolicyKind::kProportional));
  for (auto _ : state) {
    benchmark::DoNotOptimize(AuditTrace(trace));
  }
}
BENCHMARK(BM_Audit)->Unit(benchmark::kMillisecond);

void BM_RandomSuite(benchmark::State& state) {
  for (auto _ : state) {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 20; ++i) {
      benchmark::DoNotOptimize(Simulate(testing::RandomScenario(rng, {})));
    }
  }
}
BENCHMARK(BM_RandomSuite)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace lmimd
