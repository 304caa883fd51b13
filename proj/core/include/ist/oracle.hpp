#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ist/config.hpp"

namespace ist {

// Brute-force reference set with the same batched surface as Tree.
// Sequential and deliberately simple; ground truth for every equivalence
// test. Stores exactly the present keys, strictly increasing.
class OracleSet {
 public:
  OracleSet() = default;
  explicit OracleSet(std::vector<Key> sorted_keys);

  bool contains(Key key) const;
  std::vector<std::uint8_t> contains_batched(std::span<const Key> batch) const;
  std::size_t insert_batched(std::span<const Key> batch);
  std::size_t remove_batched(std::span<const Key> batch);

  std::size_t size() const { return keys_.size(); }
  const std::vector<Key>& keys() const { return keys_; }

 private:
  std::vector<Key> keys_;
};

}  // namespace ist
