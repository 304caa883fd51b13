#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "ist/parallel.hpp"
#include "ist/primitives.hpp"

using ist::Key;

namespace {

std::vector<Key> sorted_keys(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Key> keys(n);
  Key cur = 0;
  for (auto& k : keys) {
    cur += 1 + static_cast<Key>(rng() % 8);
    k = cur;
  }
  return keys;
}

}  // namespace

static void BM_Merge(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = sorted_keys(n, 1);
  std::vector<Key> b = sorted_keys(n, 2);
  for (auto& k : b) k += 3;  // keep the operands disjoint
  for (auto _ : state) {
    auto out = ist::prim::merge(a, b);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * 2 * n);
}
BENCHMARK(BM_Merge)->Range(1 << 12, 1 << 22);

static void BM_ScanExclusive(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<std::size_t> counts(n, 3);
  for (auto _ : state) {
    auto out = ist::prim::scan_exclusive(counts);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_ScanExclusive)->Range(1 << 12, 1 << 22);

static void BM_Rank(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = sorted_keys(n, 3);
  const auto b = sorted_keys(n / 2, 4);
  for (auto _ : state) {
    auto out = ist::prim::rank(a, b);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_Rank)->Range(1 << 12, 1 << 22);

static void BM_Difference(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = sorted_keys(n, 5);
  std::vector<Key> b(a.begin(), a.begin() + n / 3);
  for (auto _ : state) {
    auto out = ist::prim::difference(a, b);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_Difference)->Range(1 << 12, 1 << 22);

BENCHMARK_MAIN();
