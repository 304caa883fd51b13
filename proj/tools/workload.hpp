#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ist/config.hpp"

namespace ist::bench {

enum class OpKind { contains, insert, remove };

std::string to_string(OpKind kind);

struct OpSpec {
  OpKind kind;
  std::size_t batch_size;
};

// Workload recipe: seed the tree with every integer in [-range_limit,
// range_limit] independently with inclusion_prob, then run batches of keys
// drawn uniformly from the same interval. Fully determined by seed; the
// generator is std::mt19937_64 throughout.
struct WorkloadSpec {
  Key range_limit = 1'000'000;
  double inclusion_prob = 0.5;
  std::size_t batch_size = 100'000;
  std::uint64_t seed = 42;
  std::vector<OpSpec> op_mix;

  bool valid() const noexcept {
    return range_limit > 0 && inclusion_prob > 0.0 && inclusion_prob <= 1.0 &&
           batch_size >= 1;
  }
  // contains, insert, remove at batch_size unless the mix was customized.
  std::vector<OpSpec> effective_mix() const;
};

struct Workload {
  std::vector<Key> initial_keys;         // sorted, distinct
  std::vector<std::vector<Key>> batches;  // one normalized batch per mix entry
};

Workload gen_workload(const WorkloadSpec& spec);

// Normalized batch for repetition rep of mix entry op_index; deterministic
// in (seed, op_index, rep) only.
std::vector<Key> gen_batch(const WorkloadSpec& spec, std::size_t op_index,
                           std::size_t rep);

}  // namespace ist::bench
