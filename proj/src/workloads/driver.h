#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "irusim/workloads/address_map.h"
#include "irusim/workloads/reference.h"
#include "irusim/workloads/warp_programs.h"
#include "irusim/workloads/workloads.h"

namespace irusim::detail {

// Owns the simulated GPU and address map of one workload run and launches
// the kernels shared by all algorithms.
class Driver {
 public:
  Driver(const CsrGraph& g, Algorithm algo, Mode mode, const WorkloadOptions& opts);

  AddressMap& map() { return map_; }
  Gpu& gpu() { return gpu_; }
  std::uint32_t warp_size() const { return opts_.gpu.warp_size; }

  // Expansion of `nodes` (empty spec.frontier_array: all nodes 0..n-1).
  void expand(const ExpandSpec& spec, const std::vector<NodeId>& nodes, const std::string& name);
  // Contraction of edge-frontier elements [0, count) in the current mode.
  void contract(ContractState& state, std::uint64_t count, std::span<const std::uint32_t> secondary,
                FilterOp filter, bool positions, const std::string& name);
  void run_chunks(const std::vector<ChunkOp>& ops, std::uint64_t count, const std::string& name);
  void run(Kernel& k);

  WorkloadResult finish(WorkloadResult r);

 private:
  const CsrGraph& g_;
  Algorithm algo_;
  Mode mode_;
  WorkloadOptions opts_;
  Gpu gpu_;
  AddressMap map_;
};

}  // namespace irusim::detail
