#include <benchmark/benchmark.h>

#include "hardwall/kernels.hpp"

using namespace hardwall;

namespace {

Exec exec_of(const benchmark::State& state) {
    return state.range(0) == 0 ? Exec::Serial : Exec::Parallel;
}

void BM_DensityGrid(benchmark::State& state) {
    const DensityEval d = make_density(EnsembleParams{2.0, 2.0, 1.0});
    const std::vector<double> xs = linspace(d.lo() + 1e-6, d.hi() - 1e-6, 4096);
    for (auto _ : state) benchmark::DoNotOptimize(density_grid(d, xs, exec_of(state)));
    state.SetLabel(to_string(exec_of(state)));
}

void BM_EquilibriumResiduals(benchmark::State& state) {
    const PotentialEval p = make_potential(make_density(EnsembleParams{0.5, 2.0, 0.0}));
    const std::vector<double> xs = equilibrium_grid(p.density, 64).on;
    for (auto _ : state) benchmark::DoNotOptimize(equilibrium_residual_grid(p, xs, exec_of(state)));
    state.SetLabel(to_string(exec_of(state)));
}

void BM_FiniteNGrid(benchmark::State& state) {
    const OrthoBasis b = build_basis(15, 0.0);
    const std::vector<double> xs = linspace(0.01, 2.0, 512);
    for (auto _ : state) benchmark::DoNotOptimize(finite_n_grid(b, xs, exec_of(state)));
    state.SetLabel(to_string(exec_of(state)));
}

void BM_MinEigenvalueReplicas(benchmark::State& state) {
    const EnsembleParams p{2.0, 2.0, 0.0};
    for (auto _ : state) benchmark::DoNotOptimize(min_eigenvalue_replicas(p, 16, 4, 2000, 7, exec_of(state)));
    state.SetLabel(to_string(exec_of(state)));
}

}  // namespace

BENCHMARK(BM_DensityGrid)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_EquilibriumResiduals)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FiniteNGrid)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MinEigenvalueReplicas)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
