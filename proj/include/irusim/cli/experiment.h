#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "irusim/cli/ini.h"
#include "irusim/graph/graph.h"
#include "irusim/metrics/report.h"
#include "irusim/workloads/workloads.h"

namespace irusim {

struct ExperimentConfig {
  GpuConfig gpu;
  IruConfig iru;  // template; per-kernel fields are set by the workloads
  Algorithm algorithm = Algorithm::kBfs;
  std::string graph_path;  // exactly one of graph_path / generator
  std::string generator;   // e.g. "rmat:scale=10,ef=16"
  NodeId source = 0;
  std::uint32_t iterations = 3;
  double damping = 0.85;
  std::vector<Mode> modes{Mode::kBaseline, Mode::kIru};
  std::optional<std::uint64_t> seed;
  std::string out_dir = "irusim_out";
  bool validate_only = false;
};

// Sets one option by its config-file name. Flags and [section] keys share
// this path so both are checked the same way; unknown names throw.
void set_option(ExperimentConfig& cfg, const std::string& section, const std::string& key, const std::string& value);
void apply_ini(ExperimentConfig& cfg, const IniFile& ini);
// Throws ConfigError listing the first problem found.
void validate_config(const ExperimentConfig& cfg);

struct GeneratorSpec {
  std::string kind;  // rmat or grid
  std::map<std::string, std::string> params;
};
GeneratorSpec parse_generator(const std::string& spec);

struct LoadedGraph {
  std::string name;
  CsrGraph graph;
};
LoadedGraph build_graph(const ExperimentConfig& cfg);

struct ExperimentOutcome {
  std::vector<RunRecord> runs;
  std::vector<ComparisonReport> comparisons;
  std::vector<std::string> errors;  // one per failed cell
  int exit_code = 0;
};

// Runs every requested mode and writes report.csv, report.json and
// summary.txt under cfg.out_dir (nothing is written for --validate-only).
ExperimentOutcome run_experiment(const ExperimentConfig& cfg, std::ostream& log);

}  // namespace irusim
