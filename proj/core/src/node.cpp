#include "ist/node.hpp"

#include <algorithm>
#include <limits>
#include <optional>

#include "ist/rebuild.hpp"

namespace ist {

std::size_t Node::live_rep_count() const noexcept {
  std::size_t n = 0;
  for (std::uint8_t e : exists) n += e ? 1 : 0;
  return n;
}

std::size_t slot_of(const IdIndex& index, Key key) noexcept {
  if (key <= index.lower_bound) return 0;
  if (key >= index.upper_bound) return index.slot_count;
  const auto span =
      static_cast<__int128>(index.upper_bound) - index.lower_bound;
  const auto offset = static_cast<__int128>(key) - index.lower_bound;
  return static_cast<std::size_t>(
      offset * static_cast<__int128>(index.slot_count) / span);
}

std::size_t interpolation_search(const Node& node, Key key) noexcept {
  const auto& rep = node.rep;
  if (node.index.empty() || node.index.lower_bound == node.index.upper_bound)
    return static_cast<std::size_t>(
        std::upper_bound(rep.begin(), rep.end(), key) - rep.begin());
  std::size_t h = node.index.slots[slot_of(node.index, key)];
  while (h > 0 && rep[h - 1] > key) --h;
  while (h < rep.size() && rep[h] <= key) ++h;
  return h;
}

namespace {

struct Checker {
  const Config& cfg;
  std::vector<std::string>* out;
  static constexpr std::size_t max_reports = 64;

  void report(const std::string& path, const std::string& msg) {
    if (out->size() < max_reports) out->push_back(path + ": " + msg);
  }

  // Returns the logical key count of the subtree, checking every invariant
  // on the way. lo/hi are the exclusive enclosing separators.
  std::size_t check(const Node& node, const std::string& path,
                    std::optional<Key> lo, std::optional<Key> hi) {
    if (node.rep.empty()) report(path, "empty rep array");
    if (node.exists.size() != node.rep.size())
      report(path, "exists length differs from rep length");
    for (std::size_t i = 0; i + 1 < node.rep.size(); ++i)
      if (node.rep[i] >= node.rep[i + 1]) {
        report(path, "rep not strictly increasing at " + std::to_string(i));
        break;
      }
    if (!node.rep.empty()) {
      if (lo && node.rep.front() <= *lo)
        report(path, "rep underflows enclosing separator");
      if (hi && node.rep.back() >= *hi)
        report(path, "rep overflows enclosing separator");
    }

    std::size_t live = node.live_rep_count();

    if (node.leaf()) {
      if (!node.index.empty()) report(path, "leaf carries an index");
    } else {
      if (node.children.size() != node.rep.size() + 1)
        report(path, "child count is not |rep| + 1");
      check_index(node, path);
      for (std::size_t j = 0; j < node.children.size(); ++j) {
        if (!node.children[j]) continue;
        std::optional<Key> clo = j > 0 ? std::optional<Key>(node.rep[j - 1]) : lo;
        std::optional<Key> chi =
            j < node.rep.size() ? std::optional<Key>(node.rep[j]) : hi;
        live += check(*node.children[j], path + "/" + std::to_string(j), clo,
                      chi);
      }
    }

    if (node.size != live)
      report(path, "size " + std::to_string(node.size) +
                       " != logical key count " + std::to_string(live));
    if (node.mod_count > rebuild_threshold(node.init_size, cfg))
      report(path, "mod count " + std::to_string(node.mod_count) +
                       " exceeds rebuild threshold");
    return live;
  }

  void check_index(const Node& node, const std::string& path) {
    const IdIndex& idx = node.index;
    if (idx.empty()) {
      report(path, "inner node without an index");
      return;
    }
    if (idx.slot_count == 0 || idx.slots.size() != idx.slot_count + 1) {
      report(path, "index slot array has wrong length");
      return;
    }
    if (idx.lower_bound > idx.upper_bound) {
      report(path, "index bounds out of order");
      return;
    }
    const auto span =
        static_cast<__int128>(idx.upper_bound) - idx.lower_bound;
    for (std::size_t i = 0; i <= idx.slot_count; ++i) {
      const Key grid = static_cast<Key>(
          idx.lower_bound +
          static_cast<__int128>(i) * span / static_cast<__int128>(idx.slot_count));
      const std::size_t want = static_cast<std::size_t>(
          std::upper_bound(node.rep.begin(), node.rep.end(), grid) -
          node.rep.begin());
      if (idx.slots[i] != want) {
        report(path, "index slot " + std::to_string(i) + " holds " +
                         std::to_string(idx.slots[i]) + ", expected " +
                         std::to_string(want));
        return;
      }
      if (i > 0 && idx.slots[i] < idx.slots[i - 1]) {
        report(path, "index slots decrease at " + std::to_string(i));
        return;
      }
    }
  }
};

}  // namespace

std::vector<std::string> validate(const Node& root, const Config& cfg) {
  std::vector<std::string> out;
  Checker checker{cfg, &out};
  checker.check(root, "root", std::nullopt, std::nullopt);
  return out;
}

}  // namespace ist
