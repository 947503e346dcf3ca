// Copyright 2026 The scqkd Authors
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

// Serial reference vs OpenMP kernel for the Monte Carlo trial loop and the
// q-grid sweep. Set OMP_NUM_THREADS to vary the parallel side.

#include <vector>

#include <benchmark/benchmark.h>

#include "scqkd/analysis.hpp"
#include "scqkd/montecarlo.hpp"

namespace {

using namespace scqkd;

TrialConfig trial_config(std::int64_t rounds) {
    return {ProtocolKind::Trine, EveStrategy::intercept_resend(1.0), ChannelModel::ideal(),
            static_cast<std::uint64_t>(rounds), 7};
}

void BM_TrialsSerial(benchmark::State &state) {
    const auto cfg = trial_config(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(run_trials_serial(cfg));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_TrialsParallel(benchmark::State &state) {
    const auto cfg = trial_config(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(run_trials(cfg));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

std::vector<double> grid(std::int64_t points) {
    std::vector<double> g;
    for (std::int64_t i = 0; i < points; ++i) g.push_back(static_cast<double>(i) / static_cast<double>(points - 1));
    return g;
}

void BM_SweepSerial(benchmark::State &state) {
    const auto g = grid(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(
            sweep_serial(ProtocolKind::Tetrahedron, AttackKind::Gentle, EnsembleMix::Symmetric, ChannelModel::ideal(), g));
}

void BM_SweepParallel(benchmark::State &state) {
    const auto g = grid(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(
            sweep(ProtocolKind::Tetrahedron, AttackKind::Gentle, EnsembleMix::Symmetric, ChannelModel::ideal(), g));
}

}  // namespace

BENCHMARK(BM_TrialsSerial)->Arg(1 << 16)->Arg(1 << 20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TrialsParallel)->Arg(1 << 16)->Arg(1 << 20)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SweepSerial)->Arg(101)->Arg(1001)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Arg(101)->Arg(1001)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
