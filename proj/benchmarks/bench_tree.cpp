#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "ist/rebuild.hpp"
#include "ist/tree.hpp"

using ist::Key;
using ist::Tree;

namespace {

constexpr std::size_t kTreeSize = 1 << 20;

std::vector<Key> uniform_sorted(std::size_t n, Key range, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Key> keys(n);
  const auto width = 2 * static_cast<std::uint64_t>(range) + 1;
  for (auto& k : keys) k = static_cast<Key>(rng() % width) - range;
  return ist::normalize_batch(keys);
}

const std::vector<Key>& tree_keys() {
  static const std::vector<Key> keys =
      uniform_sorted(kTreeSize, 4 * kTreeSize, 11);
  return keys;
}

}  // namespace

static void BM_BuildIdeal(benchmark::State& state) {
  const auto& keys = tree_keys();
  for (auto _ : state) {
    auto root = ist::build_ideal(keys, ist::Config{});
    benchmark::DoNotOptimize(root.get());
  }
  state.SetItemsProcessed(state.iterations() * keys.size());
}
BENCHMARK(BM_BuildIdeal);

static void BM_ContainsBatched(benchmark::State& state) {
  const auto tree = Tree::from_sorted(tree_keys());
  const auto batch = uniform_sorted(static_cast<std::size_t>(state.range(0)),
                                    4 * kTreeSize, 22);
  for (auto _ : state) {
    auto result = tree.contains_batched(batch);
    benchmark::DoNotOptimize(result.data());
  }
  state.SetItemsProcessed(state.iterations() * batch.size());
}
BENCHMARK(BM_ContainsBatched)->Range(1 << 10, 1 << 18);

static void BM_ContainsScalarLoop(benchmark::State& state) {
  const auto tree = Tree::from_sorted(tree_keys());
  const auto batch = uniform_sorted(static_cast<std::size_t>(state.range(0)),
                                    4 * kTreeSize, 22);
  for (auto _ : state) {
    std::size_t hits = 0;
    for (Key k : batch) hits += tree.contains(k) ? 1 : 0;
    benchmark::DoNotOptimize(hits);
  }
  state.SetItemsProcessed(state.iterations() * batch.size());
}
BENCHMARK(BM_ContainsScalarLoop)->Range(1 << 10, 1 << 18);

static void BM_InsertBatched(benchmark::State& state) {
  const auto batch = uniform_sorted(static_cast<std::size_t>(state.range(0)),
                                    4 * kTreeSize, 33);
  for (auto _ : state) {
    state.PauseTiming();
    auto tree = Tree::from_sorted(tree_keys());
    state.ResumeTiming();
    tree.insert_batched(batch);
  }
  state.SetItemsProcessed(state.iterations() * batch.size());
}
BENCHMARK(BM_InsertBatched)->Range(1 << 10, 1 << 16);

BENCHMARK_MAIN();
