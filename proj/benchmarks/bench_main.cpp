#include <benchmark/benchmark.h>

#include <random>

#include "koszulhh/coboundary.hpp"
#include "koszulhh/hochschild.hpp"
#include "koszulhh/massey.hpp"

using namespace koszulhh;

namespace {

void BM_DenseRank(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  BitMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      if (rng() & 1u) m.set(r, c);
  for (auto _ : state) benchmark::DoNotOptimize(rank(m));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DenseRank)->RangeMultiplier(2)->Range(64, 1024)->Complexity();

void BM_CochainDifferentialRank(benchmark::State& state) {
  const auto pair = CoefficientPair::same(ConnectedSumAlgebra(1, 3));
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(rank(cochain_differential(pair, k, 1 - k)));
}
BENCHMARK(BM_CochainDifferentialRank)->DenseRange(2, 6);

void BM_HhDim(benchmark::State& state) {
  const auto pair = CoefficientPair::same(ConnectedSumAlgebra(static_cast<std::size_t>(state.range(0)), 3));
  for (auto _ : state) benchmark::DoNotOptimize(hh_dim(pair, 4, -2));
}
BENCHMARK(BM_HhDim)->DenseRange(0, 2);

void BM_SolveCoboundary(benchmark::State& state) {
  const auto pair = CoefficientPair::same(ConnectedSumAlgebra(2, 3));
  const int k = static_cast<int>(state.range(0));
  const CocycleSampler sampler(pair, k, 2 - k);
  std::mt19937_64 rng(2);
  const auto f = sampler.sample(rng);
  for (auto _ : state) benchmark::DoNotOptimize(solve_coboundary(pair, f));
}
BENCHMARK(BM_SolveCoboundary)->DenseRange(2, 5);

void BM_StrongMasseyCheck(benchmark::State& state) {
  const auto h = dg_algebra_from_connected_sum(ConnectedSumAlgebra(2, 3), 8);
  MasseySampling sampling;
  sampling.samples = 50;
  for (auto _ : state) benchmark::DoNotOptimize(strong_massey_check(h, sampling).passed());
}
BENCHMARK(BM_StrongMasseyCheck);

}  // namespace

BENCHMARK_MAIN();
