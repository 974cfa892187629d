// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include <limits>

#include "scsa/discretization.hpp"
#include "scsa/eigensolver.hpp"
#include "scsa/reconstruction.hpp"

namespace {

scsa::Signal sech2(std::size_t m) { return scsa::sech2_signal(scsa::Grid(0.0, 10.0, m), 5.0); }

void BM_FourierD2(benchmark::State& state) {
  const scsa::Grid g(0.0, 10.0, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(scsa::fourier_d2(g));
}
BENCHMARK(BM_FourierD2)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_EigenvaluesOnly(benchmark::State& state) {
  const scsa::Signal y = sech2(static_cast<std::size_t>(state.range(0)));
  const scsa::DecomposeOptions opts{.functions_up_to = -std::numeric_limits<double>::infinity()};
  for (auto _ : state) benchmark::DoNotOptimize(scsa::decompose(y, 0.1, opts));
}
BENCHMARK(BM_EigenvaluesOnly)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_PartialDecomposition(benchmark::State& state) {
  const scsa::Signal y = sech2(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(scsa::decompose(y, 0.01, {.functions_up_to = 0.0}));
}
BENCHMARK(BM_PartialDecomposition)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_FullDecomposition(benchmark::State& state) {
  const scsa::Signal y = sech2(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(scsa::decompose(y, 0.01));
}
BENCHMARK(BM_FullDecomposition)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_Reconstruct(benchmark::State& state) {
  const scsa::Signal y = sech2(1024);
  const scsa::SpectralDecomposition d = scsa::decompose(y, 0.01, {.functions_up_to = 0.0});
  const scsa::WindowK window = scsa::WindowK::full(y.size());
  for (auto _ : state) benchmark::DoNotOptimize(scsa::reconstruct(d, {0.01, 0.5, -0.5, window}));
}
BENCHMARK(BM_Reconstruct)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
