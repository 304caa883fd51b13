#pragma once

#include <cstddef>
#include <memory>
#include <span>

#include "ist/config.hpp"
#include "ist/node.hpp"

namespace ist {

enum class BatchOp { insert, remove };

// Modification budget of a subtree created with init_size keys:
// rebuild_factor * max(init_size, 1). The floor of one keeps empty and
// singleton subtrees from rebuilding on every touch.
std::size_t rebuild_threshold(std::size_t init_size,
                              const Config& cfg) noexcept;

// True when absorbing incoming more modifications would push the node past
// its budget, i.e. mod_count + incoming > rebuild_threshold(init_size).
bool needs_rebuild(const Node& node, std::size_t incoming,
                   const Config& cfg) noexcept;

// Writes all logically present keys of the subtree into out in ascending
// order. out.size() must equal node.size.
void flatten(const Node& node, std::span<Key> out);

// Builds an ideally balanced tree over the strictly increasing keys.
// Returns nullptr for an empty input.
std::unique_ptr<Node> build_ideal(std::span<const Key> keys, const Config& cfg);

// Index over rep for the interval [a, b] with m grid slots.
// Requires rep nonempty, a <= rep.front(), b >= rep.back(), m >= 1.
IdIndex build_id_index(std::span<const Key> rep, Key a, Key b, std::size_t m,
                       std::size_t grain = par::default_grain);

// Flattens the subtree, merges in (insert) or subtracts (remove) the slice,
// and builds a fresh ideal subtree over the result. Insert slices must be
// disjoint from the subtree's live keys; remove slices must be contained
// in them.
std::unique_ptr<Node> rebuild_with_batch(const Node& node,
                                         std::span<const Key> slice,
                                         BatchOp op, const Config& cfg);

// Whether the subtree has exactly the shape build_ideal would produce for
// its key set: no tombstones, leaves at or under the leaf threshold, inner
// separators equally spaced with k = floor(sqrt(n)) - 1, children
// recursively ideal. Null is ideal (empty tree).
bool is_ideally_balanced(const Node* root, const Config& cfg);

// Edges on the longest root-to-leaf path; 0 for an empty or single-leaf
// tree.
std::size_t height(const Node* root) noexcept;

}  // namespace ist
