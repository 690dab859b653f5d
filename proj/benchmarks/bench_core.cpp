#include <benchmark/benchmark.h>

#include "topopass/disorder.hpp"
#include "topopass/dynamics.hpp"
#include "topopass/spectral.hpp"

namespace {

topopass::SystemSpec system_at(int cells, double theta) {
    topopass::SystemSpec s;
    s.chain.cells = cells;
    s.chain.theta = theta;
    return s;
}

void BM_BuildHamiltonian(benchmark::State& state) {
    const auto sys = system_at(static_cast<int>(state.range(0)), 0.7 * topopass::kPi);
    for (auto _ : state) benchmark::DoNotOptimize(topopass::build_hamiltonian(sys));
}
BENCHMARK(BM_BuildHamiltonian)->Arg(4)->Arg(10);

void BM_Eigendecompose(benchmark::State& state) {
    const auto h = topopass::build_hamiltonian(system_at(static_cast<int>(state.range(0)), 0.7 * topopass::kPi));
    for (auto _ : state) benchmark::DoNotOptimize(topopass::eigendecompose(h));
}
BENCHMARK(BM_Eigendecompose)->Arg(4)->Arg(10);

// 1000 steps of a sweep slice; per-step cost is the reported time / 1000.
void BM_PropagateSlice(benchmark::State& state) {
    const auto sys = system_at(4, 0.0);
    topopass::SweepSchedule sched{1e-4, 1.0, 1.0 + 1e-4 * 100.0};
    const auto psi0 = topopass::atom_excited(4);
    for (auto _ : state) benchmark::DoNotOptimize(topopass::propagate(sys, sched, psi0, {0.1, 1000}));
}
BENCHMARK(BM_PropagateSlice)->Unit(benchmark::kMillisecond);

void BM_AdiabaticityParameter(benchmark::State& state) {
    const auto sys = system_at(4, 0.7 * topopass::kPi);
    for (auto _ : state) benchmark::DoNotOptimize(topopass::adiabaticity_parameter(sys, 1e-4));
}
BENCHMARK(BM_AdiabaticityParameter);

void BM_SampleRealization(benchmark::State& state) {
    topopass::DisorderSpec spec{1e-3, 1e-3, 1000, 7};
    int i = 0;
    for (auto _ : state) benchmark::DoNotOptimize(topopass::sample_realization(spec, i++ % 1000, 4));
}
BENCHMARK(BM_SampleRealization);

}  // namespace

BENCHMARK_MAIN();
