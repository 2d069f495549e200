#include <benchmark/benchmark.h>

#include "hyperc/gaussian.hpp"
#include "hyperc/generators.hpp"
#include "hyperc/inequalities.hpp"
#include "hyperc/suite.hpp"

namespace {

void BM_GaussianQNormExact(benchmark::State& state) {
  const auto f = hyperc::random_table(hyperc::Domain(hyperc::ProductSpace::uniform(2), 4), 3);
  const auto g = hyperc::encode_G(f, hyperc::SubsetMask::full(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(hyperc::gaussian_qnorm(g, 4.0));
}
BENCHMARK(BM_GaussianQNormExact)->Arg(1)->Arg(2)->Arg(4);

void BM_GaussianQNormMonteCarlo(benchmark::State& state) {
  const auto f = hyperc::random_table(hyperc::Domain(hyperc::ProductSpace::uniform(3), 3), 3);
  const auto g = hyperc::encode_G(f, hyperc::SubsetMask::full(3));
  for (auto _ : state) {
    benchmark::DoNotOptimize(hyperc::gaussian_qnorm(g, 3.0, hyperc::NormMethod::monte_carlo, {7, 100000}));
  }
}
BENCHMARK(BM_GaussianQNormMonteCarlo)->Unit(benchmark::kMillisecond);

void BM_RestrictionCertificate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto f = hyperc::majority(n, 0.5);
  const double gamma = hyperc::lp_norm(f, 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(hyperc::certify_restriction_global(f, 2.0, n, gamma));
}
BENCHMARK(BM_RestrictionCertificate)->Arg(5)->Arg(7)->Arg(9)->Unit(benchmark::kMicrosecond);

void BM_DerivativeCertificate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto f = hyperc::majority(n, 0.5);
  const double gamma = hyperc::lp_norm(f, 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(hyperc::certify_derivative_global(f, 2.0, n, gamma));
}
BENCHMARK(BM_DerivativeCertificate)->Arg(5)->Arg(7)->Unit(benchmark::kMicrosecond);

void BM_Tensorization(benchmark::State& state) {
  const auto f = hyperc::majority(3, 1.0 / 3.0);
  for (auto _ : state) benchmark::DoNotOptimize(hyperc::check_tensorization(f, 0.1, 4.0));
}
BENCHMARK(BM_Tensorization)->Unit(benchmark::kMicrosecond);

void BM_DefaultSuite(benchmark::State& state) {
  auto cfg = hyperc::default_suite_config();
  cfg.options.mc_samples = 20000;
  for (auto _ : state) benchmark::DoNotOptimize(hyperc::run_suite(cfg, static_cast<unsigned>(state.range(0))));
}
BENCHMARK(BM_DefaultSuite)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace
