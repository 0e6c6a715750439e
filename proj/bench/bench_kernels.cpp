#include <benchmark/benchmark.h>

#include <cmath>

#include "ellipdrive/kernels.hpp"
#include "ellipdrive/oracle.hpp"

using namespace ellipdrive;

namespace {

const ClosedFormSolution& paper_solution() {
  static const ClosedFormSolution sol(DriveParams{}, FreeHamiltonian(H0Params{}));
  return sol;
}

const DensitySolution& density_solution() {
  static const DensitySolution sol(solve_coeffs(10.0, 5.0, 1.0, std::sqrt(0.5), 1.0));
  return sol;
}

template <class Kernel>
void trajectory(benchmark::State& state, Kernel kernel) {
  const auto& sol = paper_solution();
  const auto coeffs = sol.decompose(ComplexVec3{{1.0, 0.0, 0.0}});
  const auto grid = uniform_grid(60.0, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernel(sol, coeffs, grid));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <class Kernel>
void phase(benchmark::State& state, Kernel kernel) {
  const auto grid = uniform_grid(60.0, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernel(paper_solution(), grid));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <class Kernel>
void density(benchmark::State& state, Kernel kernel) {
  const auto grid = uniform_grid(60.0, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernel(density_solution(), grid));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <class Kernel>
void spectrum(benchmark::State& state, Kernel kernel) {
  std::vector<double> x(static_cast<std::size_t>(state.range(0)));
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::sin(0.37 * i) + 0.2 * std::cos(1.9 * i);
  for (auto _ : state) benchmark::DoNotOptimize(kernel(x));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <class Kernel>
void gram(benchmark::State& state, Kernel kernel) {
  const auto grid = uniform_grid(60.0, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernel(paper_solution(), grid));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK_CAPTURE(trajectory, serial, &serial::sample_trajectory)->Arg(601)->Arg(6001)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(trajectory, parallel, &parallel::sample_trajectory)->Arg(601)->Arg(6001)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(phase, serial, &serial::phase_on_grid)->Arg(6001)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(phase, parallel, &parallel::phase_on_grid)->Arg(6001)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(gram, serial, &serial::max_gram_deviation)->Arg(6001)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(gram, parallel, &parallel::max_gram_deviation)->Arg(6001)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(density, serial, &serial::sample_density)->Arg(2001)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(density, parallel, &parallel::sample_density)->Arg(2001)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(spectrum, serial, &serial::dft_magnitude)->Arg(4096)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(spectrum, parallel, &parallel::dft_magnitude)->Arg(4096)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
