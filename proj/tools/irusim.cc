#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "irusim/cli/experiment.h"

using namespace irusim;

int main(int argc, char** argv) {
  CLI::App app{"irusim: GPU graph-workload simulator with an in-network reordering unit"};
  app.require_subcommand(1);
  CLI::App* run = app.add_subcommand("run", "run an experiment (baseline and/or IRU)");

  std::string config_path;
  // Flags are kept as strings and routed through set_option so they are
  // parsed and checked exactly like config-file keys.
  std::vector<std::pair<std::string, std::string>> flag_keys{
      {"workload", "algorithm"}, {"workload", "graph"}, {"workload", "generate"},
      {"workload", "source"},    {"workload", "iterations"}, {"workload", "damping"},
      {"run", "modes"},          {"run", "seed"},        {"run", "out"},
      {"iru", "timeout_cycles"}, {"iru", "hash"},        {"gpu", "max_cycles"},
  };
  std::vector<std::string> flag_values(flag_keys.size());
  const char* flag_names[] = {"--algo",  "--graph",          "--generate", "--source",     "--iterations",
                              "--damping", "--modes",        "--seed",     "--out",        "--timeout-cycles",
                              "--hash",  "--max-cycles"};
  const char* flag_help[] = {"bfs | sssp | pagerank",
                             "graph file (.mtx MatrixMarket, otherwise edge list)",
                             "synthetic graph, e.g. rmat:scale=12,ef=16 or grid:width=64,height=64",
                             "source node for bfs/sssp",
                             "pagerank iterations",
                             "pagerank damping factor",
                             "comma-separated subset of baseline,iru",
                             "seed for generators and random weights",
                             "output directory",
                             "IRU timeout in cycles, or none",
                             "dispersion | identity_mod",
                             "abort a kernel that runs longer than this"};
  run->add_option("--config", config_path, "INI config file; flags override it")->check(CLI::ExistingFile);
  for (std::size_t i = 0; i < flag_keys.size(); ++i) run->add_option(flag_names[i], flag_values[i], flag_help[i]);
  bool validate_only = false;
  run->add_flag("--validate-only", validate_only, "check config and graph, then exit");

  CLI11_PARSE(app, argc, argv);

  ExperimentConfig cfg;
  try {
    if (!config_path.empty()) apply_ini(cfg, load_ini(config_path));
    for (std::size_t i = 0; i < flag_keys.size(); ++i) {
      if (run->count(flag_names[i]) == 0) continue;
      try {
        set_option(cfg, flag_keys[i].first, flag_keys[i].second, flag_values[i]);
      } catch (const ConfigError& e) {
        throw ConfigError(std::string(flag_names[i]) + ": " + e.what());
      }
    }
    if (validate_only) cfg.validate_only = true;
    const ExperimentOutcome out = run_experiment(cfg, std::cout);
    for (const std::string& e : out.errors) std::cerr << "error: " << e << '\n';
    return out.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
