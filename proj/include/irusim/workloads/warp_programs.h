#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "irusim/gpu/gpu.h"
#include "irusim/graph/graph.h"
#include "irusim/workloads/address_map.h"

namespace irusim {

// One lane's view of a load_iru reply.
struct IruLane {
  std::uint32_t index = 0;
  std::uint32_t attribute = 0;
  std::uint32_t position = 0;
  bool enabled = false;
};

// load_iru: lane i receives reply.elements[i]; disabled lanes skip the gather.
std::vector<IruLane> load_iru(const IruReply& reply);

// Builds a warp access whose lanes 0..indices.size()-1 touch arr[indices[i]].
WarpAccess make_access(AccessKind kind, const std::string& tag, const MappedArray& arr,
                       const std::vector<std::uint64_t>& indices, std::uint32_t warp_size);

// Edge-frontier expansion over one warp-size chunk of nodes: reads the node
// frontier (unless expanding all nodes), both row offsets and any per-node
// arrays, then walks the chunk's concatenated adjacency lists 32 edges at a
// time, reading edge arrays and writing the edge-frontier arrays at out_base.
struct ExpandSpec {
  const CsrGraph* graph = nullptr;
  const AddressMap* map = nullptr;
  std::string prefix;                    // tag prefix, e.g. "bfs."
  std::string frontier_array;            // empty: node ids are 0..n-1
  std::vector<std::string> node_arrays;  // read at [u]
  std::vector<std::string> edge_arrays;  // read at [e]
  std::vector<std::string> out_arrays;   // written at [pos]
  std::uint32_t warp_size = 32;
};

class ExpandProgram : public WarpProgram {
 public:
  // Node part: frontier/row_offsets/node-array loads for `nodes`, which sit at
  // `chunk_first` in the node frontier. Edge part: `edges` written to output
  // positions out_base, out_base+1, ... Either part may be empty.
  ExpandProgram(const ExpandSpec& spec, std::vector<NodeId> nodes, std::uint64_t chunk_first,
                std::vector<EdgeIndex> edges, std::uint64_t out_base);
  bool next(WarpAccess& out) override;
  void complete(const WarpAccess&, const IruReply*) override {}

 private:
  std::uint32_t node_steps() const;
  bool next_edge_batch(WarpAccess& out);

  const ExpandSpec& spec_;
  std::vector<NodeId> nodes_;
  std::uint64_t chunk_first_;
  std::uint64_t out_base_;
  std::vector<EdgeIndex> edges_;
  std::uint32_t step_ = 0;
  std::uint64_t batch_ = 0;
  std::uint32_t sub_ = 0;
};

enum class Algorithm : std::uint8_t { kBfs, kSssp, kPageRank };
const char* to_string(Algorithm a);

// Host-side state shared by the contraction warps of one kernel.
struct ContractState {
  Algorithm algo = Algorithm::kBfs;
  const AddressMap* map = nullptr;
  std::uint32_t warp_size = 32;
  bool use_iru = false;
  std::uint64_t slice_first = 0;  // edge-frontier offset of this kernel's input

  const std::vector<NodeId>* edge_frontier = nullptr;
  const std::vector<std::uint32_t>* edge_attr = nullptr;  // SSSP distance or PR contribution bits
  const std::vector<NodeId>* edge_src = nullptr;

  std::vector<std::uint32_t>* label = nullptr;  // BFS levels
  std::uint32_t level = 0;
  std::vector<std::uint32_t>* dist = nullptr;   // SSSP
  std::vector<NodeId>* pred = nullptr;
  std::vector<double>* next_rank = nullptr;     // PR accumulators

  std::vector<NodeId>* next_frontier = nullptr;
  std::string next_frontier_array;
};

// Edge-frontier contraction: baseline warps read a chunk of the edge frontier
// directly; IRU warps call load_iru until they receive an all-disabled reply.
class ContractProgram : public WarpProgram {
 public:
  ContractProgram(ContractState& state, std::uint64_t first, std::uint64_t count);  // baseline chunk
  explicit ContractProgram(ContractState& state);                                   // IRU loop
  bool next(WarpAccess& out) override;
  void complete(const WarpAccess& access, const IruReply* reply) override;

 private:
  struct Lane {
    NodeId v;
    std::uint32_t attr;
    std::uint32_t pos;  // absolute edge-frontier position
  };
  bool next_op(WarpAccess& out);
  std::vector<std::uint64_t> lane_values(const std::vector<Lane>& lanes, int what) const;

  ContractState& s_;
  bool iru_;
  std::uint64_t first_ = 0;
  std::uint64_t count_ = 0;
  bool finished_ = false;
  bool have_batch_ = false;
  std::uint32_t op_ = 0;
  std::vector<Lane> lanes_;
  std::vector<Lane> winners_;       // lanes that claimed or improved
  std::vector<std::uint64_t> slots_;  // next-frontier positions of winners
};

// Baseline software duplicate filter over a candidate frontier.
struct FilterState {
  const AddressMap* map = nullptr;
  std::uint32_t warp_size = 32;
  std::string prefix;
  const std::vector<NodeId>* input = nullptr;
  std::string input_array;
  std::vector<std::uint32_t>* status = nullptr;
  std::uint32_t stamp = 0;
  std::vector<NodeId>* output = nullptr;
  std::string output_array;
  std::uint64_t status_reads = 0;
  std::uint64_t status_writes = 0;
};

class FilterProgram : public WarpProgram {
 public:
  FilterProgram(FilterState& state, std::uint64_t first, std::uint64_t count);
  bool next(WarpAccess& out) override;
  void complete(const WarpAccess& access, const IruReply* reply) override;

 private:
  FilterState& s_;
  std::uint64_t first_;
  std::uint64_t count_;
  std::uint32_t step_ = 0;
  std::vector<NodeId> kept_;
  std::vector<std::uint64_t> slots_;
};

// Fixed access list generated from (kind, array, first, count) tuples over one
// chunk; used for the PageRank update kernel.
struct ChunkOp {
  AccessKind kind;
  std::string tag;
  std::string array;
};

class ChunkProgram : public WarpProgram {
 public:
  ChunkProgram(const AddressMap& map, const std::vector<ChunkOp>& ops, std::uint64_t first, std::uint64_t count,
               std::uint32_t warp_size);
  bool next(WarpAccess& out) override;
  void complete(const WarpAccess&, const IruReply*) override {}

 private:
  const AddressMap& map_;
  const std::vector<ChunkOp>& ops_;
  std::uint64_t first_;
  std::uint64_t count_;
  std::uint32_t warp_size_;
  std::size_t pos_ = 0;
};

}  // namespace irusim
