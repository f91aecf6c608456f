#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "irusim/gpu/gpu.h"
#include "irusim/graph/graph.h"
#include "irusim/iru/config.h"
#include "irusim/metrics/counters.h"
#include "irusim/workloads/warp_programs.h"

namespace irusim {

enum class Mode : std::uint8_t { kBaseline, kIru };
const char* to_string(Mode m);
Mode parse_mode(const std::string& s);
Algorithm parse_algorithm(const std::string& s);

struct WorkloadOptions {
  GpuConfig gpu;
  // Template for every IRU pass: hash, timeout, bypass, buffer sizes. The
  // per-kernel fields (bases, counts, filter) are filled in by the workload.
  IruConfig iru;
  NodeId source = 0;
  std::uint32_t iterations = 3;  // PageRank
  double damping = 0.85;         // PageRank
  bool check_addresses = true;
  std::function<void(const Kernel&, const IruUnit&)> kernel_observer;
};

struct WorkloadResult {
  Algorithm algorithm = Algorithm::kBfs;
  Mode mode = Mode::kBaseline;
  std::vector<std::uint32_t> levels;     // BFS, kUnreached for unreachable nodes
  std::vector<std::uint32_t> distances;  // SSSP fixed point, kInfDistance for unreachable nodes
  std::vector<NodeId> predecessors;      // SSSP
  std::vector<double> ranks;             // PageRank
  std::uint32_t iterations = 0;
  MetricsCounters metrics;
  std::string instrumented_tag;  // the irregular access the IRU reorders

  TagStats instrumented() const;
};

// Tag of the irregular gather each algorithm instruments.
const char* instrumented_tag(Algorithm a);

WorkloadResult bfs_run(const CsrGraph& g, Mode mode, const WorkloadOptions& opts);
WorkloadResult sssp_run(const CsrGraph& g, Mode mode, const WorkloadOptions& opts);
WorkloadResult pagerank_run(const CsrGraph& g, Mode mode, const WorkloadOptions& opts);
WorkloadResult run_workload(Algorithm a, const CsrGraph& g, Mode mode, const WorkloadOptions& opts);

}  // namespace irusim
