#include "workload.hpp"

#include <cmath>
#include <random>

#include "ist/tree.hpp"

namespace ist::bench {

std::string to_string(OpKind kind) {
  switch (kind) {
    case OpKind::contains: return "contains";
    case OpKind::insert: return "insert";
    case OpKind::remove: return "remove";
  }
  return "?";
}

std::vector<OpSpec> WorkloadSpec::effective_mix() const {
  if (!op_mix.empty()) return op_mix;
  return {{OpKind::contains, batch_size},
          {OpKind::insert, batch_size},
          {OpKind::remove, batch_size}};
}

namespace {

std::vector<Key> draw_uniform(std::mt19937_64& rng, std::size_t count,
                              Key range_limit) {
  const auto width = 2 * static_cast<std::uint64_t>(range_limit) + 1;
  std::vector<Key> keys(count);
  for (auto& k : keys)
    k = static_cast<Key>(rng() % width) - range_limit;
  return keys;
}

}  // namespace

Workload gen_workload(const WorkloadSpec& spec) {
  Workload out;
  std::mt19937_64 rng(spec.seed);
  const bool take_all = spec.inclusion_prob >= 1.0;
  // Streaming Bernoulli filter over the key interval; accepted keys come
  // out sorted for free.
  const std::uint64_t threshold =
      take_all ? 0
               : static_cast<std::uint64_t>(
                     std::ldexp(spec.inclusion_prob, 64));
  out.initial_keys.reserve(static_cast<std::size_t>(
      spec.inclusion_prob * (2.0 * static_cast<double>(spec.range_limit) + 1)));
  for (Key k = -spec.range_limit; k <= spec.range_limit; ++k) {
    const std::uint64_t draw = rng();
    if (take_all || draw < threshold) out.initial_keys.push_back(k);
  }
  const auto mix = spec.effective_mix();
  for (std::size_t i = 0; i < mix.size(); ++i)
    out.batches.push_back(gen_batch(spec, i, 0));
  return out;
}

std::vector<Key> gen_batch(const WorkloadSpec& spec, std::size_t op_index,
                           std::size_t rep) {
  // Distinct stream per (op, rep), disjoint from the seeding stream.
  const std::uint64_t stream =
      spec.seed ^ (0x9e3779b97f4a7c15ULL * (op_index + 1)) ^
      (0xbf58476d1ce4e5b9ULL * (rep + 1));
  std::mt19937_64 rng(stream);
  const auto mix = spec.effective_mix();
  const std::size_t size = mix.at(op_index).batch_size;
  return normalize_batch(draw_uniform(rng, size, spec.range_limit));
}

}  // namespace ist::bench
