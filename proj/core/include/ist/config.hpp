#pragma once

#include <cstddef>
#include <cstdint>

#include "ist/parallel.hpp"

namespace ist {

// Element type of the set.
using Key = std::int64_t;

// Tuning constants for tree construction and rebuilding.
struct Config {
  // Max keys a freshly built leaf may hold (H). Must be >= 4.
  std::size_t leaf_threshold = 10;
  // A subtree is rebuilt once its modification count exceeds
  // rebuild_factor * initial size (C). Must be >= 1.
  std::size_t rebuild_factor = 2;
  // Slot count of a node's interpolation index is ceil(n^index_exponent),
  // with the exponent in [1/2, 1).
  double index_exponent = 0.75;
  // Inputs at or below this size are processed sequentially.
  std::size_t seq_cutoff = par::default_grain;
  // Route keys through inner nodes with the rank primitive instead of
  // per-key interpolation search (for A/B comparison).
  bool rank_routing = false;

  bool valid() const noexcept {
    return leaf_threshold >= 4 && rebuild_factor >= 1 &&
           index_exponent >= 0.5 && index_exponent < 1.0 && seq_cutoff >= 1;
  }
};

}  // namespace ist
