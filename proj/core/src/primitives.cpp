#include "ist/primitives.hpp"

#include <algorithm>
#include <cassert>

namespace ist::prim {
namespace {

// Exclusive scan of counts into out (same length), returns the total.
std::size_t scan_into(std::span<const std::size_t> counts,
                      std::span<std::size_t> out, std::size_t grain) {
  const std::size_t n = counts.size();
  if (n == 0) return 0;
  if (n <= grain || par::worker_count() <= 1) {
    std::size_t sum = 0;
    for (std::size_t i = 0; i < n; ++i) {
      out[i] = sum;
      sum += counts[i];
    }
    return sum;
  }
  const std::size_t blocks = (n + grain - 1) / grain;
  std::vector<std::size_t> block_sums(blocks);
  par::parallel_for(
      0, blocks,
      [&](std::size_t b) {
        const std::size_t lo = b * grain;
        const std::size_t hi = std::min(lo + grain, n);
        std::size_t sum = 0;
        for (std::size_t i = lo; i < hi; ++i) sum += counts[i];
        block_sums[b] = sum;
      },
      1);
  std::vector<std::size_t> block_offsets(blocks);
  const std::size_t total = scan_into(block_sums, block_offsets, grain);
  par::parallel_for(
      0, blocks,
      [&](std::size_t b) {
        const std::size_t lo = b * grain;
        const std::size_t hi = std::min(lo + grain, n);
        std::size_t sum = block_offsets[b];
        for (std::size_t i = lo; i < hi; ++i) {
          out[i] = sum;
          sum += counts[i];
        }
      },
      1);
  return total;
}

void merge_into(std::span<const Key> a, std::span<const Key> b,
                std::span<Key> out, std::size_t grain) {
  if (a.size() < b.size()) {
    merge_into(b, a, out, grain);
    return;
  }
  // |a| >= |b| from here on.
  if (a.size() + b.size() <= grain) {
    std::merge(a.begin(), a.end(), b.begin(), b.end(), out.begin());
    return;
  }
  const std::size_t am = a.size() / 2;
  const std::size_t bm =
      std::lower_bound(b.begin(), b.end(), a[am]) - b.begin();
  par::fork_join(
      [&] { merge_into(a.first(am), b.first(bm), out.first(am + bm), grain); },
      [&] {
        merge_into(a.subspan(am), b.subspan(bm), out.subspan(am + bm), grain);
      });
}

void mark_members_rec(std::span<const Key> a, std::span<const Key> b,
                      std::span<std::uint8_t> flags, std::size_t grain) {
  if (a.empty()) return;
  if (b.empty()) {
    par::parallel_for(0, a.size(), [&](std::size_t i) { flags[i] = 0; },
                      grain);
    return;
  }
  if (a.size() == 1) {
    flags[0] = std::binary_search(b.begin(), b.end(), a[0]) ? 1 : 0;
    return;
  }
  if (a.size() + b.size() <= grain) {
    std::size_t j = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      while (j < b.size() && b[j] < a[i]) ++j;
      flags[i] = (j < b.size() && b[j] == a[i]) ? 1 : 0;
    }
    return;
  }
  // Splitting a at its midpoint keeps both halves strictly smaller, so the
  // recursion terminates no matter how lopsided b is.
  const std::size_t am = a.size() / 2;
  const std::size_t bm =
      std::lower_bound(b.begin(), b.end(), a[am]) - b.begin();
  par::fork_join(
      [&] { mark_members_rec(a.first(am), b.first(bm), flags.first(am), grain); },
      [&] {
        mark_members_rec(a.subspan(am), b.subspan(bm), flags.subspan(am),
                         grain);
      });
}

void rank_into(std::span<const Key> a, std::span<const Key> b,
               std::size_t base, std::span<std::size_t> out,
               std::size_t grain) {
  if (b.empty()) return;
  if (a.size() + b.size() <= grain) {
    std::size_t j = 0;
    for (std::size_t i = 0; i < b.size(); ++i) {
      while (j < a.size() && a[j] <= b[i]) ++j;
      out[i] = base + j;
    }
    return;
  }
  const std::size_t bm = b.size() / 2;
  const std::size_t r =
      std::upper_bound(a.begin(), a.end(), b[bm]) - a.begin();
  out[bm] = base + r;
  par::fork_join(
      [&] { rank_into(a.first(r), b.first(bm), base, out.first(bm), grain); },
      [&] {
        rank_into(a.subspan(r), b.subspan(bm + 1), base + r,
                  out.subspan(bm + 1), grain);
      });
}

}  // namespace

std::vector<std::size_t> scan_exclusive(std::span<const std::size_t> counts,
                                        std::size_t grain) {
  std::vector<std::size_t> out(counts.size());
  scan_exclusive_into(counts, out, grain);
  return out;
}

std::size_t scan_exclusive_into(std::span<const std::size_t> counts,
                                std::span<std::size_t> out,
                                std::size_t grain) {
  assert(out.size() == counts.size());
  if (counts.empty()) return 0;
  if (grain == 0) grain = 1;
  std::size_t total = 0;
  par::run([&] { total = scan_into(counts, out, grain); });
  return total;
}

std::vector<Key> filter(std::span<const Key> arr,
                        std::span<const std::uint8_t> keep,
                        std::size_t grain) {
  assert(arr.size() == keep.size());
  const std::size_t n = arr.size();
  if (n == 0) return {};
  if (grain == 0) grain = 1;
  std::vector<Key> out;
  par::run([&] {
    std::vector<std::size_t> counts(n);
    par::parallel_for(0, n, [&](std::size_t i) { counts[i] = keep[i] ? 1 : 0; },
                      grain);
    std::vector<std::size_t> pos(n);
    const std::size_t total = scan_into(counts, pos, grain);
    out.resize(total);
    par::parallel_for(
        0, n,
        [&](std::size_t i) {
          if (keep[i]) out[pos[i]] = arr[i];
        },
        grain);
  });
  return out;
}

std::vector<Key> merge(std::span<const Key> a, std::span<const Key> b,
                       std::size_t grain) {
  std::vector<Key> out(a.size() + b.size());
  if (out.empty()) return out;
  if (grain == 0) grain = 1;
  par::run([&] { merge_into(a, b, out, grain); });
  return out;
}

void mark_members(std::span<const Key> a, std::span<const Key> b,
                  std::span<std::uint8_t> flags, std::size_t grain) {
  assert(flags.size() == a.size());
  if (a.empty()) return;
  if (grain == 0) grain = 1;
  par::run([&] { mark_members_rec(a, b, flags, grain); });
}

std::vector<Key> difference(std::span<const Key> a, std::span<const Key> b,
                            std::size_t grain) {
  if (a.empty()) return {};
  std::vector<std::uint8_t> member(a.size());
  mark_members(a, b, member, grain);
  par::run([&] {
    par::parallel_for(0, member.size(),
                      [&](std::size_t i) { member[i] = member[i] ? 0 : 1; },
                      grain);
  });
  return filter(a, std::span<const std::uint8_t>(member), grain);
}

std::size_t elem_rank(std::span<const Key> a, Key x) noexcept {
  return static_cast<std::size_t>(
      std::upper_bound(a.begin(), a.end(), x) - a.begin());
}

std::vector<std::size_t> rank(std::span<const Key> a, std::span<const Key> b,
                              std::size_t grain) {
  std::vector<std::size_t> out(b.size());
  rank_into(a, b, out, grain);
  return out;
}

void rank_into(std::span<const Key> a, std::span<const Key> b,
               std::span<std::size_t> out, std::size_t grain) {
  assert(out.size() == b.size());
  if (b.empty()) return;
  if (grain == 0) grain = 1;
  par::run([&] { rank_into(a, b, 0, out, grain); });
}

}  // namespace ist::prim
