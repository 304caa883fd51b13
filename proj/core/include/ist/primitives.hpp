#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ist/config.hpp"
#include "ist/parallel.hpp"

// Deterministic bulk-array primitives. All functions are pure: they read
// their inputs, write freshly allocated outputs, and internal tasks touch
// disjoint regions, so concurrent calls on distinct inputs are safe and the
// result never depends on the worker count.

namespace ist::prim {

// Exclusive prefix sums: result[i] = sum of counts[0..i).
std::vector<std::size_t> scan_exclusive(std::span<const std::size_t> counts,
                                        std::size_t grain = par::default_grain);

// As scan_exclusive, writing into out (same length as counts); returns the
// grand total.
std::size_t scan_exclusive_into(std::span<const std::size_t> counts,
                                std::span<std::size_t> out,
                                std::size_t grain = par::default_grain);

// Stable subsequence of arr at positions where keep is nonzero.
std::vector<Key> filter(std::span<const Key> arr,
                        std::span<const std::uint8_t> keep,
                        std::size_t grain = par::default_grain);

// Stable subsequence of arr satisfying pred.
template <class Pred>
std::vector<Key> filter(std::span<const Key> arr, Pred pred,
                        std::size_t grain = par::default_grain) {
  std::vector<std::uint8_t> keep(arr.size());
  par::parallel_for(
      0, arr.size(),
      [&](std::size_t i) { keep[i] = pred(arr[i]) ? 1 : 0; }, grain);
  return filter(arr, std::span<const std::uint8_t>(keep), grain);
}

// Union of two disjoint strictly increasing arrays, strictly increasing.
std::vector<Key> merge(std::span<const Key> a, std::span<const Key> b,
                       std::size_t grain = par::default_grain);

// Elements of strictly increasing a absent from strictly increasing b.
std::vector<Key> difference(std::span<const Key> a, std::span<const Key> b,
                            std::size_t grain = par::default_grain);

// Number of elements of strictly increasing a that are <= x.
std::size_t elem_rank(std::span<const Key> a, Key x) noexcept;

// result[i] = elem_rank(a, b[i]) for sorted b; nondecreasing.
std::vector<std::size_t> rank(std::span<const Key> a, std::span<const Key> b,
                              std::size_t grain = par::default_grain);

// As rank, writing into out (same length as b).
void rank_into(std::span<const Key> a, std::span<const Key> b,
               std::span<std::size_t> out,
               std::size_t grain = par::default_grain);

// flags[i] = 1 iff a[i] is present in b (both strictly increasing).
void mark_members(std::span<const Key> a, std::span<const Key> b,
                  std::span<std::uint8_t> flags,
                  std::size_t grain = par::default_grain);

}  // namespace ist::prim
