#include <benchmark/benchmark.h>

#include "slowsync/canonical.hpp"
#include "slowsync/catalog.hpp"
#include "slowsync/extension_bound.hpp"
#include "slowsync/families.hpp"
#include "slowsync/powerset.hpp"
#include "slowsync/search.hpp"

using namespace slowsync;

static void BM_ShortestSyncCerny(benchmark::State& state) {
  auto d = cerny(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(shortest_sync(d));
}
BENCHMARK(BM_ShortestSyncCerny)->DenseRange(6, 16, 2);

static void BM_ShortestSyncLengthCerny(benchmark::State& state) {
  auto d = cerny(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(shortest_sync_length(d));
}
BENCHMARK(BM_ShortestSyncLengthCerny)->DenseRange(6, 16, 2);

static void BM_PairReachability(benchmark::State& state) {
  auto d = cerny(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(is_synchronizing_by_pairs(d));
}
BENCHMARK(BM_PairReachability)->Arg(8)->Arg(12)->Arg(16);

static void BM_ExtensionBound(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  Dfa d(n, {cerny(n).symbol(0)});
  for (auto _ : state) benchmark::DoNotOptimize(extension_bound(d));
}
BENCHMARK(BM_ExtensionBound)->DenseRange(4, 8, 2);

static void BM_CanonicalForm(benchmark::State& state) {
  auto d = catalog_entry(state.range(0) == 0 ? "A4" : "Roman").dfa;
  for (auto _ : state) benchmark::DoNotOptimize(canonical_form(d));
}
BENCHMARK(BM_CanonicalForm)->Arg(0)->Arg(1);

static void BM_Enumerate(benchmark::State& state) {
  SearchConfig cfg;
  cfg.n = static_cast<int>(state.range(0));
  cfg.min_sync = state.range(1);
  for (auto _ : state) benchmark::DoNotOptimize(enumerate(cfg));
}
BENCHMARK(BM_Enumerate)->Args({3, 3})->Args({4, 8})->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
