#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "ist/config.hpp"

namespace ist {

// Approximate-position table over the key interval [lower_bound, upper_bound].
// slots has slot_count + 1 entries; slots[i] is the rank in the owning
// node's rep of the i-th grid point
//   grid(i) = lower_bound + floor(i * (upper_bound - lower_bound) / slot_count).
// Immutable between rebuilds.
struct IdIndex {
  std::vector<std::size_t> slots;
  Key lower_bound = 0;
  Key upper_bound = 0;
  std::size_t slot_count = 0;

  bool empty() const noexcept { return slots.empty(); }
};

// One tree node. Leaves have no children and no index; inner nodes have
// |rep| + 1 children (absent child = empty subtree). exists[i] marks
// rep[i] as logically present; size counts logically present keys in the
// whole subtree.
struct Node {
  std::vector<Key> rep;
  std::vector<std::uint8_t> exists;
  std::vector<std::unique_ptr<Node>> children;
  IdIndex index;
  std::size_t size = 0;
  std::size_t init_size = 0;
  std::size_t mod_count = 0;

  bool leaf() const noexcept { return children.empty(); }
  std::size_t live_rep_count() const noexcept;
};

// Grid slot for key, clamped into [0, slot_count].
std::size_t slot_of(const IdIndex& index, Key key) noexcept;

// Rank of key in node.rep (number of rep entries <= key). Uses the node's
// index hint plus a linear resolution scan; falls back to binary search for
// leaves and degenerate bounds.
std::size_t interpolation_search(const Node& node, Key key) noexcept;

// Recursively checks every structural invariant (ordering, child key
// ranges, size accounting, index contents, modification budget). Returns
// human-readable violations; empty means valid.
std::vector<std::string> validate(const Node& root, const Config& cfg);

}  // namespace ist
