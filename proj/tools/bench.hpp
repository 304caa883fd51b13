#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ist/config.hpp"
#include "workload.hpp"

namespace ist::bench {

struct BenchRow {
  std::string op;
  std::size_t workers;
  std::size_t batch;
  std::size_t tree_size;
  double ms;  // mean over reps
  std::size_t reps;
};

struct BenchReport {
  std::vector<BenchRow> rows;
  // FNV-1a digest of the final tree content, one per worker count; all
  // entries are equal when the data structure behaves deterministically.
  std::vector<std::uint64_t> state_digests;
};

struct BenchOptions {
  std::vector<std::size_t> workers{1};
  std::size_t reps = 10;
  bool baseline = false;
  Config config{};
};

// Builds the tree from the workload's initial keys, times every op of the
// mix at every worker count (fresh tree per worker count, identical batch
// streams), and optionally times a sequential std::set baseline key by key.
// Throws std::invalid_argument for bad options before any timing starts.
BenchReport run_bench(const WorkloadSpec& spec, const BenchOptions& options);

void write_csv(std::ostream& os, const BenchReport& report);
void write_json(std::ostream& os, const BenchReport& report);

}  // namespace ist::bench
