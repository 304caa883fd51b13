#include "ist/oracle.hpp"

#include <algorithm>
#include <cassert>

namespace ist {

OracleSet::OracleSet(std::vector<Key> sorted_keys)
    : keys_(std::move(sorted_keys)) {
  assert(std::is_sorted(keys_.begin(), keys_.end()));
  assert(std::adjacent_find(keys_.begin(), keys_.end()) == keys_.end());
}

bool OracleSet::contains(Key key) const {
  return std::binary_search(keys_.begin(), keys_.end(), key);
}

std::vector<std::uint8_t> OracleSet::contains_batched(
    std::span<const Key> batch) const {
  std::vector<std::uint8_t> result(batch.size());
  for (std::size_t i = 0; i < batch.size(); ++i)
    result[i] = contains(batch[i]) ? 1 : 0;
  return result;
}

std::size_t OracleSet::insert_batched(std::span<const Key> batch) {
  std::vector<Key> merged;
  merged.reserve(keys_.size() + batch.size());
  std::set_union(keys_.begin(), keys_.end(), batch.begin(), batch.end(),
                 std::back_inserter(merged));
  const std::size_t added = merged.size() - keys_.size();
  keys_ = std::move(merged);
  return added;
}

std::size_t OracleSet::remove_batched(std::span<const Key> batch) {
  std::vector<Key> remaining;
  remaining.reserve(keys_.size());
  std::set_difference(keys_.begin(), keys_.end(), batch.begin(), batch.end(),
                      std::back_inserter(remaining));
  const std::size_t removed = keys_.size() - remaining.size();
  keys_ = std::move(remaining);
  return removed;
}

}  // namespace ist
