// Microbenchmarks for the hot paths: building and applying the fractional
// Fourier kernel, and turning a state into a coarse-grained outcome vector.
#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "pcgeur/measurement.hpp"
#include "pcgeur/phasespace.hpp"
#include "pcgeur/scheme.hpp"

namespace {

constexpr double kPi = std::numbers::pi;

pcg::PcgScheme bench_scheme(int d) {
  return pcg::make_scheme(d, 0.0, kPi / 2, 1, std::sqrt(2.0 * kPi * d));
}

void BM_KernelBuild(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const pcg::Grid grid(n, 24.0 / n);
  double angle = 0.9;
  for (auto _ : state) {
    // Vary the angle slightly so every iteration misses the cache.
    angle += 1e-6;
    benchmark::DoNotOptimize(pcg::frft_kernel(grid, angle));
  }
  state.SetComplexityN(n);
}

void BM_KernelApply(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const pcg::Grid grid(n, 24.0 / n);
  const pcg::WaveFunction psi = pcg::random_superposition(10, 1, grid);
  pcg::frft(psi, kPi / 2);  // warm the kernel cache
  for (auto _ : state) {
    benchmark::DoNotOptimize(pcg::frft(psi, kPi / 2));
  }
  state.SetComplexityN(n);
}

void BM_PcgProbabilities(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const pcg::PcgScheme scheme = bench_scheme(d);
  const pcg::Grid grid = pcg::aligned_grid(scheme, 8, 12.0);
  const pcg::WaveFunction psi = pcg::random_superposition(10, 1, grid);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        pcg::pcg_probabilities(psi, scheme, pcg::Direction::Theta));
  }
}

void BM_SampleBinWeights(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const pcg::PcgScheme scheme = bench_scheme(d);
  const pcg::Grid grid = pcg::aligned_grid(scheme, 8, 12.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        pcg::sample_bin_weights(grid, scheme.bins_theta));
  }
}

}  // namespace

BENCHMARK(BM_KernelBuild)->RangeMultiplier(2)->Range(128, 1024)
    ->Unit(benchmark::kMillisecond)->Complexity(benchmark::oNSquared);
BENCHMARK(BM_KernelApply)->RangeMultiplier(2)->Range(128, 1024)
    ->Unit(benchmark::kMicrosecond)->Complexity(benchmark::oNSquared);
BENCHMARK(BM_PcgProbabilities)->Arg(2)->Arg(5);
BENCHMARK(BM_SampleBinWeights)->Arg(2)->Arg(5);

BENCHMARK_MAIN();
