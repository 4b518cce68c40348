// Command-line front end: static top-k, dynamic update benchmark, and
// oracle-checked verification runs.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "dyntopk/bench.hpp"
#include "dyntopk/graph.hpp"
#include "dyntopk/static_topk.hpp"

namespace {

using namespace dyntopk;

struct GraphOptions {
  std::string path;
  bool directed = false;
  bool remap = false;
  std::string remap_out;
};

void add_graph_options(CLI::App* cmd, GraphOptions& g) {
  cmd->add_option("--graph", g.path, "Edge-list file (two ids per line, '#' or '%' comments)")->required();
  cmd->add_flag("--directed", g.directed, "Treat edges as directed arcs");
  cmd->add_flag("--remap", g.remap, "Compact sparse ids to 0..n-1 in order of first appearance");
  cmd->add_option("--remap-out", g.remap_out, "Write 'new_id original_id' lines for remapped ids");
}

LoadResult load(const GraphOptions& opts) {
  std::ifstream in(opts.path);
  if (!in) throw std::runtime_error("cannot open graph file '" + opts.path + "'");
  LoadResult result = load_edge_list(in, opts.directed, LoadOptions{opts.remap || !opts.remap_out.empty()});
  if (result.duplicates_dropped + result.self_loops_dropped > 0)
    std::cerr << "dropped " << result.duplicates_dropped << " duplicate edges and " << result.self_loops_dropped
              << " self-loops\n";
  if (!opts.remap_out.empty()) {
    std::ofstream map_out(opts.remap_out);
    if (!map_out) throw std::runtime_error("cannot write '" + opts.remap_out + "'");
    for (std::size_t i = 0; i < result.original_ids.size(); ++i) map_out << i << ' ' << result.original_ids[i] << '\n';
  }
  return result;
}

const std::map<std::string, Variant> kVariants{{"nbcut", Variant::NBCut}, {"nbbound", Variant::NBBound}};
const std::map<std::string, bench::Operation> kOperations{
    {"insert", bench::Operation::Insert}, {"delete", bench::Operation::Delete}, {"mixed", bench::Operation::Mixed}};

void add_run_options(CLI::App* cmd, bench::BenchConfig& cfg) {
  cmd->add_option("--variant", cfg.variant, "nbcut or nbbound")
      ->transform(CLI::CheckedTransformer(kVariants, CLI::ignore_case));
  cmd->add_option("--op", cfg.op, "insert, delete or mixed")
      ->transform(CLI::CheckedTransformer(kOperations, CLI::ignore_case));
  cmd->add_option("--k", cfg.k, "Number of top nodes")->check(CLI::PositiveNumber);
  cmd->add_option("--updates", cfg.num_updates, "Number of edge updates");
  cmd->add_option("--static-every", cfg.static_every, "Time the static algorithm every N updates")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", cfg.seed, "Seed for the update sequence");
  cmd->add_option("--out", cfg.out_path, "Output file");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact dynamic top-k harmonic closeness"};
  app.require_subcommand(1);

  GraphOptions graph_opts;
  bench::BenchConfig cfg;
  std::string summary_path;

  auto* topk_cmd = app.add_subcommand("topk", "Run the static algorithm once and print node,closeness lines");
  add_graph_options(topk_cmd, graph_opts);
  topk_cmd->add_option("--k", cfg.k, "Number of top nodes")->check(CLI::PositiveNumber);
  topk_cmd->add_option("--variant", cfg.variant, "nbcut or nbbound")
      ->transform(CLI::CheckedTransformer(kVariants, CLI::ignore_case));

  auto* bench_cmd = app.add_subcommand("bench", "Time dynamic updates against static recomputation");
  add_graph_options(bench_cmd, graph_opts);
  add_run_options(bench_cmd, cfg);
  bench_cmd->add_option("--summary", summary_path, "Also write the JSON summary to this file");

  auto* verify_cmd = app.add_subcommand("verify", "Check every update against brute force");
  add_graph_options(verify_cmd, graph_opts);
  add_run_options(verify_cmd, cfg);

  CLI11_PARSE(app, argc, argv);

  try {
    LoadResult loaded = load(graph_opts);
    cfg.graph_path = graph_opts.path;
    cfg.directed = graph_opts.directed;

    if (*topk_cmd) {
      const auto result = bench::run_static(loaded.graph, cfg.k, cfg.variant);
      for (const auto& e : result.topk.entries()) {
        const std::int64_t id = loaded.original_ids.empty() ? e.id : loaded.original_ids[e.id];
        std::cout << id << ',' << bench::format_fixed(e.value, 9) << '\n';
      }
      return 0;
    }

    if (*bench_cmd) {
      if (cfg.num_updates < 1) throw std::invalid_argument("--updates must be at least 1");
      const auto report = bench::run_benchmark(cfg, std::move(loaded.graph));
      if (cfg.out_path.empty()) {
        bench::write_csv(std::cout, report.records);
      } else {
        std::ofstream out(cfg.out_path);
        if (!out) throw std::runtime_error("cannot write '" + cfg.out_path + "'");
        bench::write_csv(out, report.records);
      }
      const std::string summary = bench::summary_json(report.summary).dump(2);
      if (!summary_path.empty()) {
        std::ofstream out(summary_path);
        if (!out) throw std::runtime_error("cannot write '" + summary_path + "'");
        out << summary << '\n';
      }
      (cfg.out_path.empty() ? std::cerr : std::cout) << summary << '\n';
      return 0;
    }

    const auto report = bench::verify_run(cfg, std::move(loaded.graph));
    std::string line = std::string(report.passed ? "PASS" : "FAIL") + " updates_checked=" +
                       std::to_string(report.updates_checked) + " " + report.message;
    std::cout << line << '\n';
    if (!cfg.out_path.empty()) {
      std::ofstream out(cfg.out_path);
      out << line << '\n';
    }
    return report.passed ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
