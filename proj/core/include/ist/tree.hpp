#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "ist/config.hpp"
#include "ist/node.hpp"

namespace ist {

// Sorted set of int64 keys with batched contains/insert/remove. Batches
// must be strictly increasing (normalize_batch produces one from arbitrary
// input). A tree admits one batched operation at a time: mutations need
// exclusive access, reads may not overlap mutations.
class Tree {
 public:
  Tree() = default;
  explicit Tree(Config cfg);

  // Bulk-loads an ideally balanced tree over strictly increasing keys.
  static Tree from_sorted(std::span<const Key> keys, Config cfg = {});

  // Scalar membership probe; also the sequential cross-check for the
  // batched path.
  bool contains(Key key) const noexcept;

  // result[i] = 1 iff batch[i] is in the set.
  std::vector<std::uint8_t> contains_batched(std::span<const Key> batch) const;

  // Adds every batch key not already present; returns how many were added.
  std::size_t insert_batched(std::span<const Key> batch);

  // Removes every batch key currently present; returns how many were removed.
  std::size_t remove_batched(std::span<const Key> batch);

  std::size_t size() const noexcept { return root_ ? root_->size : 0; }
  bool empty() const noexcept { return size() == 0; }
  const Config& config() const noexcept { return cfg_; }
  const Node* root() const noexcept { return root_.get(); }

  // All present keys in ascending order.
  std::vector<Key> to_sorted_keys() const;

 private:
  Config cfg_{};
  std::unique_ptr<Node> root_;
};

// Sorted, deduplicated copy of raw.
std::vector<Key> normalize_batch(std::span<const Key> raw);

}  // namespace ist
