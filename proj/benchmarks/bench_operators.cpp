#include <benchmark/benchmark.h>

#include "hyperc/generators.hpp"
#include "hyperc/operators.hpp"

namespace {

hyperc::FunctionTable table(int k, int n) {
  return hyperc::random_table(hyperc::Domain(hyperc::ProductSpace::uniform(k), n), 1);
}

void BM_EfronStein(benchmark::State& state) {
  const auto f = table(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(hyperc::efron_stein(f));
  state.SetComplexityN(static_cast<benchmark::IterationCount>(f.size()));
}
BENCHMARK(BM_EfronStein)->Args({2, 4})->Args({2, 8})->Args({2, 10})->Args({3, 6});

void BM_NoiseResample(benchmark::State& state) {
  const auto f = table(2, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(hyperc::noise_resample(f, 0.3));
}
BENCHMARK(BM_NoiseResample)->Arg(8)->Arg(14)->Arg(20);

void BM_NoiseSpectral(benchmark::State& state) {
  const auto f = table(2, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(hyperc::noise_spectral(f, 1.5));
}
BENCHMARK(BM_NoiseSpectral)->Arg(6)->Arg(10);

void BM_LevelPart(benchmark::State& state) {
  const auto f = table(2, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(hyperc::level_part(f, 2));
}
BENCHMARK(BM_LevelPart)->Arg(8)->Arg(12);

void BM_Fourier(benchmark::State& state) {
  const auto f = table(2, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(hyperc::fourier_spectrum(f));
}
BENCHMARK(BM_Fourier)->Arg(10)->Arg(16);

}  // namespace
