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

#include "lmimd/optimum.h"
#include "random_scenario.h"

namespace lmimd {
namespace {

void BM_SolveOptRandom(benchmark::State& state) {
  std::mt19937_64 rng(7);
  testing::RandomScenarioOptions options;
  options.max_paths = static_cast<int>(state.range(0));
  const Scenario s = testing::RandomScenario(rng, options);
  for (auto _ : state) {
    benchmark::DoNotOptimize(SolveOpt(s));
  }
}
BENCHMARK(BM_SolveOptRandom)->Arg(4)->Arg(8)->Unit(benchmark::kMicrosecond);

void BM_BruteForce(benchmark::State& state) {
  std::mt19937_64 rng(9);
  const Scenario s = testing::RandomOptInstance(rng, 3, 4, 10);
  for (auto _ : state) {
    benchmark::DoNotOptimize(BruteForceOpt(s, 0.5));
  }
}
BENCHMARK(BM_BruteForce)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace lmimd
