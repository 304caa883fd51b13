#include "bench.hpp"

#include <chrono>
#include <ostream>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "ist/parallel.hpp"
#include "ist/tree.hpp"

namespace ist::bench {
namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

std::uint64_t fnv1a(const std::vector<Key>& keys) {
  std::uint64_t h = 1469598103934665603ULL;
  for (Key k : keys) {
    auto v = static_cast<std::uint64_t>(k);
    for (int byte = 0; byte < 8; ++byte) {
      h ^= (v >> (8 * byte)) & 0xff;
      h *= 1099511628211ULL;
    }
  }
  return h;
}

void validate_options(const WorkloadSpec& spec, const BenchOptions& options) {
  if (!spec.valid()) throw std::invalid_argument("invalid workload spec");
  if (!options.config.valid())
    throw std::invalid_argument("invalid tree config");
  if (options.workers.empty())
    throw std::invalid_argument("no worker counts given");
  for (std::size_t w : options.workers)
    if (w == 0) throw std::invalid_argument("worker count must be at least 1");
  if (options.reps == 0) throw std::invalid_argument("reps must be at least 1");
}

}  // namespace

BenchReport run_bench(const WorkloadSpec& spec, const BenchOptions& options) {
  validate_options(spec, options);
  const auto mix = spec.effective_mix();
  BenchReport report;

  const Workload workload = gen_workload(spec);

  for (std::size_t workers : options.workers) {
    par::set_workers(workers);
    Tree tree = Tree::from_sorted(workload.initial_keys, options.config);
    for (std::size_t op = 0; op < mix.size(); ++op) {
      BenchRow row;
      row.op = to_string(mix[op].kind);
      row.workers = workers;
      row.batch = mix[op].batch_size;
      row.tree_size = tree.size();
      row.reps = options.reps;
      double total_ms = 0;
      for (std::size_t rep = 0; rep < options.reps; ++rep) {
        // Batches are generated and sorted outside the timed region.
        const std::vector<Key> batch = gen_batch(spec, op, rep);
        const auto start = Clock::now();
        switch (mix[op].kind) {
          case OpKind::contains: {
            volatile std::size_t sink = tree.contains_batched(batch).size();
            (void)sink;
            break;
          }
          case OpKind::insert:
            tree.insert_batched(batch);
            break;
          case OpKind::remove:
            tree.remove_batched(batch);
            break;
        }
        total_ms += elapsed_ms(start);
      }
      row.ms = total_ms / static_cast<double>(options.reps);
      report.rows.push_back(std::move(row));
    }
    report.state_digests.push_back(fnv1a(tree.to_sorted_keys()));
  }

  if (options.baseline) {
    par::set_workers(1);
    std::set<Key> set(workload.initial_keys.begin(),
                      workload.initial_keys.end());
    for (std::size_t op = 0; op < mix.size(); ++op) {
      BenchRow row;
      row.op = "baseline_" + to_string(mix[op].kind);
      row.workers = 1;
      row.batch = mix[op].batch_size;
      row.tree_size = set.size();
      row.reps = options.reps;
      double total_ms = 0;
      for (std::size_t rep = 0; rep < options.reps; ++rep) {
        const std::vector<Key> batch = gen_batch(spec, op, rep);
        const auto start = Clock::now();
        switch (mix[op].kind) {
          case OpKind::contains: {
            std::size_t hits = 0;
            for (Key k : batch) hits += set.count(k);
            volatile std::size_t sink = hits;
            (void)sink;
            break;
          }
          case OpKind::insert:
            for (Key k : batch) set.insert(k);
            break;
          case OpKind::remove:
            for (Key k : batch) set.erase(k);
            break;
        }
        total_ms += elapsed_ms(start);
      }
      row.ms = total_ms / static_cast<double>(options.reps);
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

void write_csv(std::ostream& os, const BenchReport& report) {
  os << "op,workers,batch,tree_size,ms,reps\n";
  for (const BenchRow& row : report.rows)
    os << row.op << ',' << row.workers << ',' << row.batch << ','
       << row.tree_size << ',' << row.ms << ',' << row.reps << '\n';
}

void write_json(std::ostream& os, const BenchReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const BenchRow& row : report.rows)
    rows.push_back({{"op", row.op},
                    {"workers", row.workers},
                    {"batch", row.batch},
                    {"tree_size", row.tree_size},
                    {"ms", row.ms},
                    {"reps", row.reps}});
  os << rows.dump(2) << '\n';
}

}  // namespace ist::bench
