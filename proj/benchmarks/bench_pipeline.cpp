#include <benchmark/benchmark.h>

#include "kkent/entanglement.hpp"
#include "kkent/observables.hpp"

namespace {

kkent::ModelParams params(int n) {
  kkent::ModelParams p;
  p.n_sites = n;
  p.j_spin = p.i_pseudo = -0.4;
  p.k_coupling = -1.0;
  p.field_spin = {0.1, kkent::FieldPattern::staggered};
  return p;
}

void BM_BuildHamiltonian(benchmark::State& state) {
  const auto p = params(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kkent::build_hamiltonian(p));
}
BENCHMARK(BM_BuildHamiltonian)->DenseRange(3, 6)->Unit(benchmark::kMicrosecond);

void BM_Diagonalize(benchmark::State& state) {
  const auto h = kkent::build_hamiltonian(params(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(kkent::diagonalize(h));
}
BENCHMARK(BM_Diagonalize)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

void BM_ThermalState(benchmark::State& state) {
  const auto s = kkent::diagonalize(kkent::build_hamiltonian(params(static_cast<int>(state.range(0)))));
  for (auto _ : state) benchmark::DoNotOptimize(kkent::thermal_density_matrix(s, 0.1));
}
BENCHMARK(BM_ThermalState)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

void BM_LogNegativity(benchmark::State& state) {
  const auto s = kkent::diagonalize(kkent::build_hamiltonian(params(static_cast<int>(state.range(0)))));
  const auto rho = kkent::thermal_density_matrix(s, 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(kkent::logarithmic_negativity(rho));
}
BENCHMARK(BM_LogNegativity)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

void BM_Observables(benchmark::State& state) {
  const auto p = params(static_cast<int>(state.range(0)));
  const auto rho = kkent::thermal_density_matrix(kkent::diagonalize(kkent::build_hamiltonian(p)), 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(kkent::compute_observables(rho, p));
}
BENCHMARK(BM_Observables)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
