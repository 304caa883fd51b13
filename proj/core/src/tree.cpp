#include "ist/tree.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

#include "ist/primitives.hpp"
#include "ist/rebuild.hpp"

namespace ist {
namespace {

[[maybe_unused]] bool strictly_increasing(std::span<const Key> keys) {
  for (std::size_t i = 0; i + 1 < keys.size(); ++i)
    if (keys[i] >= keys[i + 1]) return false;
  return true;
}

// Contiguous run of batch indices routed to one child.
struct Segment {
  std::size_t child;
  std::size_t lo;
  std::size_t hi;
};

// Per-call workspace indexed by batch position. A node only touches its
// own [lo, hi) slice and children recurse into disjoint subslices, so one
// allocation serves the whole traversal.
struct Scratch {
  std::vector<std::size_t> ranks;
  std::vector<std::size_t> heads;
  std::vector<std::size_t> offsets;

  explicit Scratch(std::size_t n) : ranks(n), heads(n), offsets(n) {}
};

// Whether batch key i sits exactly on a rep entry, given its rank.
bool rep_hit(const Node& node, std::span<const Key> keys,
             const std::vector<std::size_t>& ranks, std::size_t i) {
  const std::size_t r = ranks[i];
  return r > 0 && node.rep[r - 1] == keys[i];
}

// Rank of every key of keys[lo..hi) within node.rep, through the per-key
// interpolation index or the rank primitive.
void compute_ranks(const Node& node, std::span<const Key> keys,
                   std::size_t lo, std::size_t hi, Scratch& scratch,
                   const Config& cfg) {
  if (cfg.rank_routing) {
    prim::rank_into(node.rep, keys.subspan(lo, hi - lo),
                    std::span<std::size_t>(scratch.ranks).subspan(lo, hi - lo),
                    cfg.seq_cutoff);
    return;
  }
  par::parallel_for(
      lo, hi,
      [&](std::size_t i) {
        scratch.ranks[i] = interpolation_search(node, keys[i]);
      },
      cfg.seq_cutoff);
}

// Groups the unresolved keys of [lo..hi) into per-child segments. Keys are
// sorted, so each child's keys form one contiguous run; runs are separated
// by child changes or by keys resolved at this node.
std::vector<Segment> route_segments(const Node& node,
                                    std::span<const Key> keys, std::size_t lo,
                                    std::size_t hi, Scratch& scratch,
                                    const Config& cfg) {
  const auto& ranks = scratch.ranks;
  auto& heads = scratch.heads;
  par::parallel_for(
      lo, hi,
      [&](std::size_t i) {
        const bool starts = !rep_hit(node, keys, ranks, i) &&
                            (i == lo || rep_hit(node, keys, ranks, i - 1) ||
                             ranks[i - 1] != ranks[i]);
        heads[i] = starts ? 1 : 0;
      },
      cfg.seq_cutoff);
  const std::size_t count = prim::scan_exclusive_into(
      std::span<const std::size_t>(heads).subspan(lo, hi - lo),
      std::span<std::size_t>(scratch.offsets).subspan(lo, hi - lo),
      cfg.seq_cutoff);
  std::vector<Segment> segments(count);
  par::parallel_for(
      lo, hi,
      [&](std::size_t i) {
        if (rep_hit(node, keys, ranks, i)) return;
        const std::size_t slot = scratch.offsets[i];
        if (heads[i]) {
          segments[slot].child = ranks[i];
          segments[slot].lo = i;
        }
        const bool ends = i + 1 == hi || rep_hit(node, keys, ranks, i + 1) ||
                          ranks[i + 1] != ranks[i];
        if (ends) segments[slot + heads[i] - 1].hi = i + 1;
      },
      cfg.seq_cutoff);
  return segments;
}

template <class Visit>
void for_each_segment(const std::vector<Segment>& segments,
                      std::size_t key_count, const Config& cfg, Visit visit) {
  if (key_count <= cfg.seq_cutoff) {
    for (const Segment& s : segments) visit(s);
  } else {
    par::parallel_for(0, segments.size(),
                      [&](std::size_t s) { visit(segments[s]); }, 1);
  }
}

// Sequential routing loop shared by the small-slice paths: finds the run
// [i, j) of keys that descend into child r, where key i itself is not on a
// rep entry.
std::size_t run_end(const Node& node, std::span<const Key> keys,
                    std::size_t i, std::size_t hi, std::size_t r) {
  if (r == node.rep.size()) return hi;
  const Key bound = node.rep[r];
  std::size_t j = i + 1;
  while (j < hi && keys[j] < bound) ++j;
  return j;
}

// --- contains -------------------------------------------------------------

void contains_seq(const Node* node, std::span<const Key> keys, std::size_t lo,
                  std::size_t hi, std::uint8_t* result) {
  if (!node) {
    for (std::size_t i = lo; i < hi; ++i) result[i] = 0;
    return;
  }
  if (node->leaf()) {
    std::size_t p = 0;
    for (std::size_t i = lo; i < hi; ++i) {
      while (p < node->rep.size() && node->rep[p] <= keys[i]) ++p;
      result[i] = p > 0 && node->rep[p - 1] == keys[i] && node->exists[p - 1];
    }
    return;
  }
  std::size_t i = lo;
  while (i < hi) {
    const std::size_t r = interpolation_search(*node, keys[i]);
    if (r > 0 && node->rep[r - 1] == keys[i]) {
      result[i] = node->exists[r - 1];
      ++i;
      continue;
    }
    const std::size_t j = run_end(*node, keys, i, hi, r);
    contains_seq(node->children[r].get(), keys, i, j, result);
    i = j;
  }
}

void traverse_contains(const Node* node, std::span<const Key> keys,
                       std::size_t lo, std::size_t hi, std::uint8_t* result,
                       Scratch& scratch, const Config& cfg) {
  const std::size_t n = hi - lo;
  if (n <= cfg.seq_cutoff) {
    contains_seq(node, keys, lo, hi, result);
    return;
  }
  if (!node) {
    par::parallel_for(lo, hi, [&](std::size_t i) { result[i] = 0; },
                      cfg.seq_cutoff);
    return;
  }
  if (node->leaf()) {
    auto ranks = std::span<std::size_t>(scratch.ranks).subspan(lo, n);
    prim::rank_into(node->rep, keys.subspan(lo, n), ranks, cfg.seq_cutoff);
    par::parallel_for(
        lo, hi,
        [&](std::size_t i) {
          const std::size_t r = scratch.ranks[i];
          result[i] = r > 0 && node->rep[r - 1] == keys[i] &&
                      node->exists[r - 1];
        },
        cfg.seq_cutoff);
    return;
  }
  compute_ranks(*node, keys, lo, hi, scratch, cfg);
  par::parallel_for(
      lo, hi,
      [&](std::size_t i) {
        if (rep_hit(*node, keys, scratch.ranks, i))
          result[i] = node->exists[scratch.ranks[i] - 1];
      },
      cfg.seq_cutoff);
  const std::vector<Segment> segments =
      route_segments(*node, keys, lo, hi, scratch, cfg);
  for_each_segment(segments, n, cfg, [&](const Segment& s) {
    traverse_contains(node->children[s.child].get(), keys, s.lo, s.hi, result,
                      scratch, cfg);
  });
}

// --- insert ---------------------------------------------------------------

// Merges fresh (disjoint from rep) into a leaf's rep, carrying over the
// exists flags and marking the new keys live.
void leaf_absorb(Node& node, std::span<const Key> fresh, const Config& cfg) {
  std::vector<Key> merged = prim::merge(node.rep, fresh, cfg.seq_cutoff);
  std::vector<std::uint8_t> exists(merged.size());
  std::vector<std::size_t> rep_shift =
      prim::rank(fresh, node.rep, cfg.seq_cutoff);
  std::vector<std::size_t> fresh_shift =
      prim::rank(node.rep, fresh, cfg.seq_cutoff);
  par::parallel_for(
      0, node.rep.size(),
      [&](std::size_t i) { exists[i + rep_shift[i]] = node.exists[i]; },
      cfg.seq_cutoff);
  par::parallel_for(
      0, fresh.size(),
      [&](std::size_t j) { exists[j + fresh_shift[j]] = 1; }, cfg.seq_cutoff);
  node.rep = std::move(merged);
  node.exists = std::move(exists);
}

// Revives tombstones matching keys[lo..hi) and merges the rest into the
// leaf. The slice is logically absent from the tree by the pre-filter.
void leaf_insert(Node& node, std::span<const Key> keys, std::size_t lo,
                 std::size_t hi, const Config& cfg) {
  const std::size_t n = hi - lo;
  std::vector<std::uint8_t> keep(n);
  par::parallel_for(
      0, n,
      [&](std::size_t i) {
        const std::size_t r = prim::elem_rank(node.rep, keys[lo + i]);
        if (r > 0 && node.rep[r - 1] == keys[lo + i]) {
          keep[i] = 0;
          node.exists[r - 1] = 1;
        } else {
          keep[i] = 1;
        }
      },
      cfg.seq_cutoff);
  const std::vector<Key> fresh = prim::filter(
      keys.subspan(lo, n), std::span<const std::uint8_t>(keep), cfg.seq_cutoff);
  if (!fresh.empty()) leaf_absorb(node, fresh, cfg);
}

void insert_seq(std::unique_ptr<Node>& slot, std::span<const Key> keys,
                std::size_t lo, std::size_t hi, const Config& cfg) {
  Node* node = slot.get();
  if (!node) {
    slot = build_ideal(keys.subspan(lo, hi - lo), cfg);
    return;
  }
  if (needs_rebuild(*node, hi - lo, cfg)) {
    slot = rebuild_with_batch(*node, keys.subspan(lo, hi - lo),
                              BatchOp::insert, cfg);
    return;
  }
  node->mod_count += hi - lo;
  node->size += hi - lo;
  if (node->leaf()) {
    leaf_insert(*node, keys, lo, hi, cfg);
    return;
  }
  std::size_t i = lo;
  while (i < hi) {
    const std::size_t r = interpolation_search(*node, keys[i]);
    if (r > 0 && node->rep[r - 1] == keys[i]) {
      node->exists[r - 1] = 1;  // revival of a tombstone
      ++i;
      continue;
    }
    const std::size_t j = run_end(*node, keys, i, hi, r);
    insert_seq(node->children[r], keys, i, j, cfg);
    i = j;
  }
}

void insert_descend(std::unique_ptr<Node>& slot, std::span<const Key> keys,
                    std::size_t lo, std::size_t hi, Scratch& scratch,
                    const Config& cfg) {
  const std::size_t n = hi - lo;
  if (n <= cfg.seq_cutoff) {
    insert_seq(slot, keys, lo, hi, cfg);
    return;
  }
  Node* node = slot.get();
  if (!node) {
    slot = build_ideal(keys.subspan(lo, n), cfg);
    return;
  }
  if (needs_rebuild(*node, n, cfg)) {
    slot = rebuild_with_batch(*node, keys.subspan(lo, n), BatchOp::insert, cfg);
    return;
  }
  node->mod_count += n;
  node->size += n;

  if (node->leaf()) {
    leaf_insert(*node, keys, lo, hi, cfg);
    return;
  }

  compute_ranks(*node, keys, lo, hi, scratch, cfg);
  par::parallel_for(
      lo, hi,
      [&](std::size_t i) {
        if (rep_hit(*node, keys, scratch.ranks, i))
          node->exists[scratch.ranks[i] - 1] = 1;  // revival of a tombstone
      },
      cfg.seq_cutoff);
  const std::vector<Segment> segments =
      route_segments(*node, keys, lo, hi, scratch, cfg);
  for_each_segment(segments, n, cfg, [&](const Segment& s) {
    insert_descend(node->children[s.child], keys, s.lo, s.hi, scratch, cfg);
  });
}

// --- remove ---------------------------------------------------------------

void leaf_remove(Node& node, std::span<const Key> keys, std::size_t lo,
                 std::size_t hi, const Config& cfg) {
  par::parallel_for(
      lo, hi,
      [&](std::size_t i) {
        const std::size_t r = prim::elem_rank(node.rep, keys[i]);
        assert(r > 0 && node.rep[r - 1] == keys[i]);
        node.exists[r - 1] = 0;
      },
      cfg.seq_cutoff);
}

void remove_seq(std::unique_ptr<Node>& slot, std::span<const Key> keys,
                std::size_t lo, std::size_t hi, const Config& cfg) {
  Node* node = slot.get();
  assert(node && "remove batch routed into an empty subtree");
  if (needs_rebuild(*node, hi - lo, cfg)) {
    slot = rebuild_with_batch(*node, keys.subspan(lo, hi - lo),
                              BatchOp::remove, cfg);
    return;
  }
  node->mod_count += hi - lo;
  node->size -= hi - lo;
  if (node->leaf()) {
    leaf_remove(*node, keys, lo, hi, cfg);
    return;
  }
  std::size_t i = lo;
  while (i < hi) {
    const std::size_t r = interpolation_search(*node, keys[i]);
    if (r > 0 && node->rep[r - 1] == keys[i]) {
      node->exists[r - 1] = 0;
      ++i;
      continue;
    }
    const std::size_t j = run_end(*node, keys, i, hi, r);
    remove_seq(node->children[r], keys, i, j, cfg);
    i = j;
  }
}

void remove_descend(std::unique_ptr<Node>& slot, std::span<const Key> keys,
                    std::size_t lo, std::size_t hi, Scratch& scratch,
                    const Config& cfg) {
  const std::size_t n = hi - lo;
  if (n <= cfg.seq_cutoff) {
    remove_seq(slot, keys, lo, hi, cfg);
    return;
  }
  Node* node = slot.get();
  assert(node && "remove batch routed into an empty subtree");
  if (needs_rebuild(*node, n, cfg)) {
    slot = rebuild_with_batch(*node, keys.subspan(lo, n), BatchOp::remove, cfg);
    return;
  }
  node->mod_count += n;
  node->size -= n;

  if (node->leaf()) {
    leaf_remove(*node, keys, lo, hi, cfg);
    return;
  }

  compute_ranks(*node, keys, lo, hi, scratch, cfg);
  par::parallel_for(
      lo, hi,
      [&](std::size_t i) {
        if (rep_hit(*node, keys, scratch.ranks, i))
          node->exists[scratch.ranks[i] - 1] = 0;
      },
      cfg.seq_cutoff);
  const std::vector<Segment> segments =
      route_segments(*node, keys, lo, hi, scratch, cfg);
  for_each_segment(segments, n, cfg, [&](const Segment& s) {
    remove_descend(node->children[s.child], keys, s.lo, s.hi, scratch, cfg);
  });
}

}  // namespace

Tree::Tree(Config cfg) : cfg_(cfg) {
  if (!cfg_.valid()) throw std::invalid_argument("invalid tree config");
}

Tree Tree::from_sorted(std::span<const Key> keys, Config cfg) {
  Tree tree(cfg);
  assert(strictly_increasing(keys));
  tree.root_ = build_ideal(keys, cfg);
  return tree;
}

bool Tree::contains(Key key) const noexcept {
  const Node* v = root_.get();
  while (v) {
    const std::size_t r = interpolation_search(*v, key);
    if (r > 0 && v->rep[r - 1] == key) return v->exists[r - 1];
    if (v->leaf()) return false;
    v = v->children[r].get();
  }
  return false;
}

std::vector<std::uint8_t> Tree::contains_batched(
    std::span<const Key> batch) const {
  assert(strictly_increasing(batch));
  std::vector<std::uint8_t> result(batch.size());
  if (batch.empty() || !root_) return result;
  Scratch scratch(batch.size());
  par::run([&] {
    traverse_contains(root_.get(), batch, 0, batch.size(), result.data(),
                      scratch, cfg_);
  });
  return result;
}

std::size_t Tree::insert_batched(std::span<const Key> batch) {
  assert(strictly_increasing(batch));
  if (batch.empty()) return 0;
  std::vector<std::uint8_t> present = contains_batched(batch);
  par::run([&] {
    par::parallel_for(0, present.size(),
                      [&](std::size_t i) { present[i] = present[i] ? 0 : 1; },
                      cfg_.seq_cutoff);
  });
  const std::vector<Key> todo = prim::filter(
      batch, std::span<const std::uint8_t>(present), cfg_.seq_cutoff);
  if (todo.empty()) return 0;
  Scratch scratch(todo.size());
  par::run([&] { insert_descend(root_, todo, 0, todo.size(), scratch, cfg_); });
  return todo.size();
}

std::size_t Tree::remove_batched(std::span<const Key> batch) {
  assert(strictly_increasing(batch));
  if (batch.empty()) return 0;
  const std::vector<std::uint8_t> present = contains_batched(batch);
  const std::vector<Key> todo = prim::filter(
      batch, std::span<const std::uint8_t>(present), cfg_.seq_cutoff);
  if (todo.empty()) return 0;
  Scratch scratch(todo.size());
  par::run([&] { remove_descend(root_, todo, 0, todo.size(), scratch, cfg_); });
  return todo.size();
}

std::vector<Key> Tree::to_sorted_keys() const {
  std::vector<Key> keys(size());
  if (root_) flatten(*root_, keys);
  return keys;
}

std::vector<Key> normalize_batch(std::span<const Key> raw) {
  std::vector<Key> keys(raw.begin(), raw.end());
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  return keys;
}

}  // namespace ist
