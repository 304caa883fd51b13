#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "bench.hpp"
#include "setops.hpp"

namespace {

int run_bench_command(const ist::bench::WorkloadSpec& spec,
                      const ist::bench::BenchOptions& options, bool json,
                      const std::string& out_path) {
  const ist::bench::BenchReport report = ist::bench::run_bench(spec, options);
  if (out_path.empty()) {
    json ? ist::bench::write_json(std::cout, report)
         : ist::bench::write_csv(std::cout, report);
  } else {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "cannot open " << out_path << " for writing\n";
      return 1;
    }
    json ? ist::bench::write_json(out, report)
         : ist::bench::write_csv(out, report);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parallel-batched interpolation search tree tool"};
  app.require_subcommand(1);

  // bench
  auto* bench = app.add_subcommand("bench", "Time batched operations");
  ist::bench::WorkloadSpec spec;
  ist::bench::BenchOptions options;
  std::vector<std::string> ops;
  bool json = false;
  std::string out_path;
  bench->add_option("--range", spec.range_limit,
                    "Keys are drawn from [-range, range]")
      ->capture_default_str();
  bench->add_option("--prob", spec.inclusion_prob,
                    "Inclusion probability for the initial keys")
      ->capture_default_str();
  bench->add_option("--batch", spec.batch_size, "Keys per batch")
      ->capture_default_str();
  bench->add_option("--seed", spec.seed, "Workload seed")
      ->capture_default_str();
  bench->add_option("--workers", options.workers,
                    "Comma-separated worker counts")
      ->delimiter(',');
  bench->add_option("--reps", options.reps, "Repetitions per measurement")
      ->capture_default_str();
  bench->add_flag("--baseline", options.baseline,
                  "Also time a sequential std::set key by key");
  bench->add_option("--ops", ops,
                    "Operation mix (any of: contains,insert,remove)")
      ->delimiter(',');
  bench->add_option("--H", options.config.leaf_threshold, "Leaf threshold")
      ->capture_default_str();
  bench->add_option("--C", options.config.rebuild_factor, "Rebuild factor")
      ->capture_default_str();
  bench->add_option("--eps", options.config.index_exponent,
                    "Index size exponent in [0.5, 1)")
      ->capture_default_str();
  bench->add_option("--cutoff", options.config.seq_cutoff,
                    "Sequential grain size")
      ->capture_default_str();
  bench->add_flag("--rank-routing", options.config.rank_routing,
                  "Route inner nodes with the rank primitive");
  bench->add_flag("--json", json, "Emit JSON instead of CSV");
  bench->add_option("--out", out_path, "Write the report to a file");

  // setops
  auto* setops = app.add_subcommand("setops", "File-based set algebra");
  std::string op_name;
  std::string file_a;
  std::string file_b;
  std::string set_out;
  setops->add_option("op", op_name, "union, intersect, or diff")
      ->required()
      ->check(CLI::IsMember({"union", "intersect", "diff"}));
  setops->add_option("fileA", file_a, "Left operand (one integer per line)")
      ->required();
  setops->add_option("fileB", file_b, "Right operand (one integer per line)")
      ->required();
  setops->add_option("--out", set_out, "Output file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (bench->parsed()) {
      for (const std::string& name : ops) {
        if (name == "contains")
          spec.op_mix.push_back({ist::bench::OpKind::contains, spec.batch_size});
        else if (name == "insert")
          spec.op_mix.push_back({ist::bench::OpKind::insert, spec.batch_size});
        else if (name == "remove")
          spec.op_mix.push_back({ist::bench::OpKind::remove, spec.batch_size});
        else {
          std::cerr << "unknown op '" << name << "'\n";
          return 1;
        }
      }
      return run_bench_command(spec, options, json, out_path);
    }
    if (setops->parsed()) {
      const ist::bench::SetOp op = op_name == "union"
                                       ? ist::bench::SetOp::unite
                                       : op_name == "diff"
                                             ? ist::bench::SetOp::subtract
                                             : ist::bench::SetOp::intersect;
      ist::bench::run_setops(op, file_a, file_b, set_out);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return 1;
  }
  return 0;
}
