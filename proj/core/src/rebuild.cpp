#include "ist/rebuild.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <optional>

#include "ist/primitives.hpp"

namespace ist {
namespace {

std::size_t floor_sqrt(std::size_t n) noexcept {
  auto r = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::size_t index_slot_count(std::size_t n, const Config& cfg) noexcept {
  const double m = std::ceil(std::pow(static_cast<double>(n), cfg.index_exponent));
  return std::max<std::size_t>(1, static_cast<std::size_t>(m));
}

void flatten_rec(const Node& node, std::span<Key> out, std::size_t grain) {
  assert(out.size() == node.size);
  if (node.leaf()) {
    std::size_t w = 0;
    for (std::size_t i = 0; i < node.rep.size(); ++i)
      if (node.exists[i]) out[w++] = node.rep[i];
    assert(w == node.size);
    return;
  }
  const std::size_t k = node.rep.size();
  // Source 2i is child i, source 2i+1 is rep[i] (one key when live).
  std::vector<std::size_t> sizes(2 * k + 1);
  for (std::size_t i = 0; i <= k; ++i)
    sizes[2 * i] = node.children[i] ? node.children[i]->size : 0;
  for (std::size_t i = 0; i < k; ++i) sizes[2 * i + 1] = node.exists[i] ? 1 : 0;
  std::vector<std::size_t> positions = prim::scan_exclusive(sizes, grain);

  auto emit = [&](std::size_t src) {
    if (sizes[src] == 0) return;
    if (src % 2 == 0)
      flatten_rec(*node.children[src / 2],
                  out.subspan(positions[src], sizes[src]), grain);
    else
      out[positions[src]] = node.rep[src / 2];
  };
  if (node.size <= grain) {
    for (std::size_t src = 0; src < sizes.size(); ++src) emit(src);
  } else {
    par::parallel_for(0, sizes.size(), emit, 1);
  }
}

std::unique_ptr<Node> build_rec(std::span<const Key> keys, const Config& cfg) {
  const std::size_t n = keys.size();
  if (n == 0) return nullptr;
  auto node = std::make_unique<Node>();
  node->size = node->init_size = n;
  if (n <= cfg.leaf_threshold) {
    node->rep.assign(keys.begin(), keys.end());
    node->exists.assign(n, 1);
    return node;
  }
  const std::size_t k = floor_sqrt(n) - 1;
  node->rep.resize(k);
  node->exists.assign(k, 1);
  node->children.resize(k + 1);
  par::parallel_for(
      0, k, [&](std::size_t i) { node->rep[i] = keys[(i + 1) * k]; },
      cfg.seq_cutoff);

  // Child i covers the keys strictly between rep[i-1] and rep[i]:
  // [0, k), then [i*k + 1, (i+1)*k) for the middle children, and
  // [k*k + 1, n) for the last one.
  auto child_range = [&](std::size_t i) -> std::pair<std::size_t, std::size_t> {
    if (i == 0) return {0, k};
    if (i == k) return {k * k + 1, n};
    return {i * k + 1, (i + 1) * k};
  };
  auto build_child = [&](std::size_t i) {
    auto [lo, hi] = child_range(i);
    node->children[i] = build_rec(keys.subspan(lo, hi - lo), cfg);
  };
  if (n <= cfg.seq_cutoff) {
    for (std::size_t i = 0; i <= k; ++i) build_child(i);
  } else {
    par::parallel_for(0, k + 1, build_child, 1);
  }

  node->index = build_id_index(node->rep, keys.front(), keys.back(),
                               index_slot_count(n, cfg), cfg.seq_cutoff);
  return node;
}

// Logical subtree summary used by the ideal-balance check.
struct SubtreeShape {
  std::size_t keys = 0;
  Key min = 0;
  Key max = 0;
};

std::optional<SubtreeShape> ideal_shape(const Node& node, const Config& cfg) {
  if (node.rep.empty()) return std::nullopt;
  for (std::uint8_t e : node.exists)
    if (!e) return std::nullopt;
  for (std::size_t i = 0; i + 1 < node.rep.size(); ++i)
    if (node.rep[i] >= node.rep[i + 1]) return std::nullopt;

  if (node.leaf()) {
    if (node.rep.size() > cfg.leaf_threshold) return std::nullopt;
    return SubtreeShape{node.rep.size(), node.rep.front(), node.rep.back()};
  }

  const std::size_t k = node.rep.size();
  if (node.children.size() != k + 1) return std::nullopt;
  std::size_t total = k;
  Key subtree_min = node.rep.front();
  Key subtree_max = node.rep.back();
  std::vector<std::size_t> child_keys(k + 1);
  for (std::size_t i = 0; i <= k; ++i) {
    if (!node.children[i]) return std::nullopt;
    auto shape = ideal_shape(*node.children[i], cfg);
    if (!shape) return std::nullopt;
    const bool lo_ok = i == 0 || shape->min > node.rep[i - 1];
    const bool hi_ok = i == k || shape->max < node.rep[i];
    if (!lo_ok || !hi_ok) return std::nullopt;
    if (i == 0) subtree_min = shape->min;
    if (i == k) subtree_max = shape->max;
    child_keys[i] = shape->keys;
    total += shape->keys;
  }
  if (total <= cfg.leaf_threshold) return std::nullopt;
  if (k != floor_sqrt(total) - 1) return std::nullopt;
  // Separator i must sit at position (i+1)*k of the in-order sequence:
  // equivalently the child slice sizes are k, k-1, ..., k-1, n - k*k - 1.
  if (child_keys[0] != k) return std::nullopt;
  for (std::size_t i = 1; i < k; ++i)
    if (child_keys[i] != k - 1) return std::nullopt;
  if (child_keys[k] != total - k * k - 1) return std::nullopt;

  return SubtreeShape{total, subtree_min, subtree_max};
}

}  // namespace

std::size_t rebuild_threshold(std::size_t init_size,
                              const Config& cfg) noexcept {
  return cfg.rebuild_factor * std::max<std::size_t>(init_size, 1);
}

bool needs_rebuild(const Node& node, std::size_t incoming,
                   const Config& cfg) noexcept {
  return node.mod_count + incoming > rebuild_threshold(node.init_size, cfg);
}

void flatten(const Node& node, std::span<Key> out) {
  assert(out.size() == node.size);
  par::run([&] { flatten_rec(node, out, par::default_grain); });
}

std::unique_ptr<Node> build_ideal(std::span<const Key> keys,
                                  const Config& cfg) {
  assert(cfg.valid());
  std::unique_ptr<Node> root;
  par::run([&] { root = build_rec(keys, cfg); });
  return root;
}

IdIndex build_id_index(std::span<const Key> rep, Key a, Key b, std::size_t m,
                       std::size_t grain) {
  assert(!rep.empty() && m >= 1 && a <= rep.front() && b >= rep.back());
  IdIndex index;
  index.lower_bound = a;
  index.upper_bound = b;
  index.slot_count = m;
  std::vector<Key> bounds(m + 1);
  const auto span = static_cast<__int128>(b) - a;
  par::parallel_for(
      0, m + 1,
      [&](std::size_t i) {
        bounds[i] = static_cast<Key>(
            a + static_cast<__int128>(i) * span / static_cast<__int128>(m));
      },
      grain);
  index.slots = prim::rank(rep, bounds, grain);
  return index;
}

std::unique_ptr<Node> rebuild_with_batch(const Node& node,
                                         std::span<const Key> slice,
                                         BatchOp op, const Config& cfg) {
  std::vector<Key> keys(node.size);
  flatten(node, keys);
  std::vector<Key> updated = op == BatchOp::insert
                                 ? prim::merge(keys, slice, cfg.seq_cutoff)
                                 : prim::difference(keys, slice, cfg.seq_cutoff);
  return build_ideal(updated, cfg);
}

bool is_ideally_balanced(const Node* root, const Config& cfg) {
  if (!root) return true;
  return ideal_shape(*root, cfg).has_value();
}

std::size_t height(const Node* root) noexcept {
  if (!root || root->leaf()) return 0;
  std::size_t deepest = 0;
  for (const auto& child : root->children)
    deepest = std::max(deepest, height(child.get()));
  return deepest + 1;
}

}  // namespace ist
