// stabnet: reproducible experiment harness for random stabilizer tensor
// networks. Subcommands: verify | rt | ghz | fourpartite | spinmodel |
// moments. Identical configurations produce identical output bytes,
// independent of --workers.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "stabnet/experiments.hpp"

namespace {

using namespace stabnet;

void write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << text;
}

void add_common(CLI::App* cmd, RunConfig& cfg, bool needs_graph) {
  if (needs_graph)
    cmd->add_option("--graph", cfg.graph_path, "graph JSON file")->required();
  cmd->add_option("--seed", cfg.seed, "64-bit master seed");
  cmd->add_option("--trials", cfg.trials, "number of sampled networks");
  cmd->add_option("--p", cfg.p_override, "override the graph's prime p");
  cmd->add_option("--N", cfg.n_override, "override the bond exponent N");
  cmd->add_option("--out", cfg.out_path, "output path (default stdout)");
  cmd->add_option("--format", cfg.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--workers", cfg.workers, "worker threads");
}

int run(int argc, char** argv) {
  CLI::App app{"stabilizer tensor network workbench"};
  app.require_subcommand(1);

  RunConfig cfg;
  bool corrupt_distance = false;

  auto* verify = app.add_subcommand(
      "verify", "run the cross-module invariant suite");
  verify
      ->add_flag("--corrupt-distance", corrupt_distance,
                 "negative-control hook: corrupt one metric entry")
      ->group("");

  auto* rt = app.add_subcommand(
      "rt", "min-cut entropies vs sampled entanglement per region");
  add_common(rt, cfg, true);

  auto* ghz = app.add_subcommand(
      "ghz", "GHZ content (a,b,c,g) of sampled networks");
  add_common(ghz, cfg, true);
  ghz->add_option("--regions", cfg.region_names,
                  "three region names (default A,B,C)")
      ->delimiter(',');

  auto* four = app.add_subcommand(
      "fourpartite", "fourpartite Bell extraction accounting");
  add_common(four, cfg, true);
  four->add_option("--regions", cfg.region_names,
                   "four region names (default A1,A2,A3,A4)")
      ->delimiter(',');

  auto* spin = app.add_subcommand(
      "spinmodel", "exact spin-model prediction vs Monte Carlo");
  add_common(spin, cfg, true);
  spin->add_option("--regions", cfg.region_names,
                   "three region names (default A,B,C)")
      ->delimiter(',');

  auto* moments = app.add_subcommand(
      "moments", "stabilizer moment identities (designs, commutant)");
  moments->add_option("--p", cfg.moments_p, "prime p");
  moments->add_option("--n", cfg.moments_n, "qudit count n");
  moments->add_option("--mode", cfg.moments_mode, "exhaustive or mc")
      ->check(CLI::IsMember({"exhaustive", "mc"}));
  moments->add_option("--trials", cfg.trials, "Monte Carlo trials");
  moments->add_option("--seed", cfg.seed, "64-bit master seed");
  moments->add_option("--out", cfg.out_path, "output path");
  moments->add_option("--format", cfg.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  CLI11_PARSE(app, argc, argv);

  if (verify->parsed()) {
    cfg.command = "verify";
    auto checks = run_verify(VerifyOptions{corrupt_distance});
    std::string first_failure;
    for (const auto& c : checks) {
      if (c.ok) {
        std::cout << "[ok]   " << c.name << "\n";
      } else {
        std::cout << "[FAIL] " << c.name << ": " << c.detail << "\n";
        if (first_failure.empty()) first_failure = c.name;
      }
    }
    if (!first_failure.empty()) {
      std::cout << "first failing property: " << first_failure << "\n";
      return 1;
    }
    std::cout << "all " << checks.size() << " properties hold\n";
    return 0;
  }

  if (rt->parsed()) {
    cfg.command = "rt";
    NetworkGraph g = load_graph(cfg);
    auto result = run_rt(g, cfg.seed, cfg.trials, cfg.workers);
    write_output(render(rt_table(result), cfg), cfg.out_path);
    return 0;
  }

  if (ghz->parsed()) {
    cfg.command = "ghz";
    if (cfg.region_names.empty()) cfg.region_names = {"A", "B", "C"};
    if (cfg.region_names.size() != 3)
      throw CLI::ValidationError("ghz needs exactly three regions");
    NetworkGraph g = load_graph(cfg);
    auto result = run_ghz(g, cfg.region_names[0], cfg.region_names[1],
                          cfg.region_names[2], cfg.seed, cfg.trials,
                          cfg.workers);
    write_output(render(ghz_table(result), cfg), cfg.out_path);
    return 0;
  }

  if (four->parsed()) {
    cfg.command = "fourpartite";
    if (cfg.region_names.empty())
      cfg.region_names = {"A1", "A2", "A3", "A4"};
    NetworkGraph g = load_graph(cfg);
    auto result = run_fourpartite(g, cfg.region_names, cfg.seed, cfg.trials,
                                  cfg.workers);
    write_output(render(fourpartite_table(result), cfg), cfg.out_path);
    return 0;
  }

  if (spin->parsed()) {
    cfg.command = "spinmodel";
    if (cfg.region_names.empty()) cfg.region_names = {"A", "B", "C"};
    if (cfg.region_names.size() != 3)
      throw CLI::ValidationError("spinmodel needs exactly three regions");
    NetworkGraph g = load_graph(cfg);
    auto result = run_spinmodel(g, cfg.region_names[0], cfg.region_names[1],
                                cfg.region_names[2], cfg.seed, cfg.trials,
                                cfg.workers);
    write_output(render(spinmodel_table(result), cfg), cfg.out_path);
    return 0;
  }

  if (moments->parsed()) {
    cfg.command = "moments";
    auto reports = run_moments(cfg.moments_p, cfg.moments_n, cfg.moments_mode,
                               cfg.trials, cfg.seed);
    write_output(render(moments_table(reports), cfg), cfg.out_path);
    bool all_pass = true;
    for (const auto& r : reports) all_pass = all_pass && r.pass;
    return all_pass ? 0 : 1;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
