// Copyright 2026 The HarvestLab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "harvestlab/autonomous.hpp"
#include "harvestlab/periodic.hpp"
#include "harvestlab/scenarios.hpp"

using namespace harvestlab;

namespace {

void BM_RunPreset(benchmark::State& state, const char* name, int index) {
  const Scenario s = preset(name)[index];
  for (auto _ : state) benchmark::DoNotOptimize(run_scenario(s).metrics.final_stock);
}
BENCHMARK_CAPTURE(BM_RunPreset, fig3_alphaK_0_5_10y, "fig3", 1)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_RunPreset, fig6_september_quota_1y, "fig6-static", 2)->Unit(benchmark::kMillisecond);

void BM_FindPeriodic(benchmark::State& state) {
  const HarvestModel m = preset("fig2")[1].model();
  for (auto _ : state) benchmark::DoNotOptimize(find_periodic(m).v0_star);
}
BENCHMARK(BM_FindPeriodic)->Unit(benchmark::kMillisecond);

void BM_PoincareMap(benchmark::State& state) {
  const HarvestModel m = preset("fig2")[1].model();
  for (auto _ : state) benchmark::DoNotOptimize(poincare_map(-0.3, m));
}
BENCHMARK(BM_PoincareMap)->Unit(benchmark::kMicrosecond);

void BM_Msy(benchmark::State& state) {
  const GrowthParams p{1.0, 0.2, 5.0, 0.0};
  const int resolution = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(msy(p, resolution).yield);
}
BENCHMARK(BM_Msy)->Arg(1000)->Arg(100000)->Unit(benchmark::kMicrosecond);

void BM_SweepFig3(benchmark::State& state) {
  const auto scenarios = preset("fig3");
  const auto threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_all(scenarios, {}, threads).size());
}
BENCHMARK(BM_SweepFig3)->Arg(1)->Arg(3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
