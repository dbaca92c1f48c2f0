#include <benchmark/benchmark.h>

#include "revival/bell.hpp"
#include "revival/channels.hpp"
#include "revival/entanglement.hpp"
#include "revival/harness.hpp"
#include "revival/tomography.hpp"

using namespace revival;

namespace {

const Spectrum& fit_spectrum() {
  static const Spectrum s({{0.37, 778.853, 0.9}, {0.44, 780.160, 0.9},
                           {0.19, 781.459, 0.9}},
                          780.0);
  return s;
}

void BM_Kernel(benchmark::State& state) {
  double x = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernel(fit_spectrum(), x));
    x += 1.0;
    if (x > 800.0) x = 0.0;
  }
}
BENCHMARK(BM_Kernel);

void BM_Concurrence(benchmark::State& state) {
  const DensityMatrix4 rho =
      state_partial(KappaParam(0.607), KappaParam(Complex(0.2, 0.1)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(concurrence(rho));
  }
}
BENCHMARK(BM_Concurrence);

void BM_SweepPoint(benchmark::State& state) {
  const KappaParam ka(0.607);
  double x = 0.0;
  for (auto _ : state) {
    const DensityMatrix4 rho =
        state_partial(ka, KappaParam(kernel(fit_spectrum(), x)));
    benchmark::DoNotOptimize(gamma(rho));
    benchmark::DoNotOptimize(degree_of_polarization(rho));
    x += 1.0;
    if (x > 800.0) x = 0.0;
  }
}
BENCHMARK(BM_SweepPoint);

void BM_MleReconstruct(benchmark::State& state) {
  const auto counts =
      simulate_counts(state_maximal(KappaParam(0.5)), 10000, 1, false);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mle_reconstruct(counts));
  }
}
BENCHMARK(BM_MleReconstruct)->Unit(benchmark::kMillisecond);

void BM_OptimizeChsh(benchmark::State& state) {
  const DensityMatrix4 rho = state_maximal(KappaParam(Complex(0.24, -0.24)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(optimize_chsh_linear(rho));
  }
}
BENCHMARK(BM_OptimizeChsh)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
