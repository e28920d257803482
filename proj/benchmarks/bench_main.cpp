#include <benchmark/benchmark.h>

#include "generators.hpp"
#include "toricsplit/factorize.hpp"
#include "toricsplit/recovery.hpp"
#include "toricsplit/squarezero.hpp"

using namespace toricsplit;

static void BM_CountDiagMod2(benchmark::State& state) {
  const auto p = profile(FactorKind::diag(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(count_square_zero(p, 2));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CountDiagMod2)->DenseRange(2, 10, 2);

static void BM_CountProductThreads(benchmark::State& state) {
  const auto p = product_profile(parse_product("PQ(4,3) * DIAG(2) * CP1"));
  const CountOptions opts{20'000'000, static_cast<unsigned>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(count_square_zero(p, 3, opts));
}
BENCHMARK(BM_CountProductThreads)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_Factorize(benchmark::State& state) {
  testing::Rng rng(7);
  Fan f = projective_fan(2);
  for (int i = 1; i < state.range(0); ++i) f = product(f, i % 2 ? hirzebruch(i) : projective_fan(1));
  f = transform(f, testing::random_unimodular(rng, static_cast<std::size_t>(f.dim()), 5));
  for (auto _ : state) benchmark::DoNotOptimize(factorize(f));
}
BENCHMARK(BM_Factorize)->DenseRange(1, 4)->Unit(benchmark::kMicrosecond);

static void BM_Isomorphic(benchmark::State& state) {
  testing::Rng rng(8);
  Fan f = hirzebruch(3);
  for (int i = 1; i < state.range(0); ++i) f = product(f, projective_fan(1));
  const auto g = transform(f, testing::random_unimodular(rng, static_cast<std::size_t>(f.dim()), 5));
  for (auto _ : state) benchmark::DoNotOptimize(isomorphic(f, g));
}
BENCHMARK(BM_Isomorphic)->DenseRange(1, 4)->Unit(benchmark::kMicrosecond);

static void BM_RecoverDense(benchmark::State& state) {
  testing::Rng rng(9);
  std::vector<InvariantBundle> bundles;
  for (int i = 0; i < 64; ++i) bundles.push_back(bundle(realize(testing::random_multiplicities(rng, true))));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(recover(bundles[i++ % bundles.size()]));
}
BENCHMARK(BM_RecoverDense)->Unit(benchmark::kMicrosecond);
BENCHMARK_MAIN();
