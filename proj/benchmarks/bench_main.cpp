#include <random>

#include <benchmark/benchmark.h>

#include "hopsign/polyalg.hpp"
#include "hopsign/spectra.hpp"

using namespace hopsign;

static void BM_eigvals_periodic(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 gen(1);
  std::vector<double> c(n);
  for (auto& v : c) v = (gen() >> 63) ? 0.5 : -0.5;
  const DenseMatrix m = build_periodic(c, std::polar(1.0, 0.3));
  for (auto _ : state) benchmark::DoNotOptimize(eigvals(m));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_eigvals_periodic)->RangeMultiplier(2)->Range(8, 512)->Complexity(benchmark::oNCubed);

static void BM_pi_union(benchmark::State& state) {
  const auto n_max = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(pi_union(n_max, 0.5, 64).cloud.size());
}
BENCHMARK(BM_pi_union)->DenseRange(4, 10, 2)->Unit(benchmark::kMillisecond);

static void BM_verify_identities(benchmark::State& state) {
  const int r = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(verify_identities(r).all_pass());
}
BENCHMARK(BM_verify_identities)->DenseRange(6, 10, 2)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
