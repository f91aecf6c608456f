#include "driver.h"

#include <algorithm>

namespace irusim {

const char* to_string(Mode m) { return m == Mode::kBaseline ? "baseline" : "iru"; }

Mode parse_mode(const std::string& s) {
  if (s == "baseline") return Mode::kBaseline;
  if (s == "iru") return Mode::kIru;
  throw ConfigError("unknown mode '" + s + "' (expected baseline or iru)");
}

Algorithm parse_algorithm(const std::string& s) {
  if (s == "bfs") return Algorithm::kBfs;
  if (s == "sssp") return Algorithm::kSssp;
  if (s == "pr" || s == "pagerank") return Algorithm::kPageRank;
  throw ConfigError("unknown algorithm '" + s + "' (expected bfs, sssp or pr)");
}

const char* instrumented_tag(Algorithm a) {
  switch (a) {
    case Algorithm::kBfs: return "bfs.gather_label";
    case Algorithm::kSssp: return "sssp.atomic_min_dist";
    case Algorithm::kPageRank: return "pr.atomic_add_rank";
  }
  return "";
}

TagStats WorkloadResult::instrumented() const { return metrics.tag(instrumented_tag).value_or(TagStats{}); }

WorkloadResult run_workload(Algorithm a, const CsrGraph& g, Mode mode, const WorkloadOptions& opts) {
  switch (a) {
    case Algorithm::kBfs: return bfs_run(g, mode, opts);
    case Algorithm::kSssp: return sssp_run(g, mode, opts);
    case Algorithm::kPageRank: return pagerank_run(g, mode, opts);
  }
  throw ConfigError("unknown algorithm");
}

namespace detail {

namespace {
// IRU passes stay below the 24-bit element limit; a multiple of every
// partition alignment so each slice starts on an aligned line.
constexpr std::uint64_t kIruSlice = 1ull << 23;
// Edge batches (of warp_size edges) copied by one expansion warp.
constexpr std::uint64_t kExpandBatchesPerWarp = 1;
}  // namespace

Driver::Driver(const CsrGraph& g, Algorithm algo, Mode mode, const WorkloadOptions& opts)
    : g_(g), algo_(algo), mode_(mode), opts_(opts), gpu_(opts.gpu), map_(opts.gpu) {
  if (opts.check_addresses) gpu_.set_access_checker([this](const WarpAccess& a) { map_.check(a); });
  if (opts.kernel_observer) gpu_.set_kernel_observer(opts.kernel_observer);
}

void Driver::run(Kernel& k) {
  if (k.warps.empty()) return;
  gpu_.run(k);
}

void Driver::expand(const ExpandSpec& spec, const std::vector<NodeId>& nodes, const std::string& name) {
  Kernel k;
  k.name = name;
  const std::uint32_t ws = warp_size();
  const std::uint64_t n = spec.frontier_array.empty() ? g_.num_nodes : nodes.size();
  // Scan-based load balancing: node warps read the frontier and row offsets,
  // then edge warps each copy an equal slice of the resulting edge list.
  std::vector<EdgeIndex> edges;
  for (std::uint64_t first = 0; first < n; first += ws) {
    const std::uint64_t count = std::min<std::uint64_t>(ws, n - first);
    std::vector<NodeId> chunk;
    for (std::uint64_t i = first; i < first + count; ++i) {
      const NodeId u = spec.frontier_array.empty() ? static_cast<NodeId>(i) : nodes[i];
      chunk.push_back(u);
      for (EdgeIndex e = g_.row_offsets[u]; e < g_.row_offsets[u + 1]; ++e) edges.push_back(e);
    }
    k.warps.push_back(std::make_unique<ExpandProgram>(spec, std::move(chunk), first, std::vector<EdgeIndex>{}, 0));
  }
  for (const std::string& out : spec.out_arrays) map_.reserve(out, edges.size());
  const std::uint64_t per_warp = static_cast<std::uint64_t>(ws) * kExpandBatchesPerWarp;
  for (std::uint64_t first = 0; first < edges.size(); first += per_warp) {
    const std::uint64_t last = std::min<std::uint64_t>(edges.size(), first + per_warp);
    std::vector<EdgeIndex> slice(edges.begin() + static_cast<std::ptrdiff_t>(first),
                                 edges.begin() + static_cast<std::ptrdiff_t>(last));
    k.warps.push_back(std::make_unique<ExpandProgram>(spec, std::vector<NodeId>{}, 0, std::move(slice), first));
  }
  run(k);
}

void Driver::contract(ContractState& state, std::uint64_t count, std::span<const std::uint32_t> secondary,
                      FilterOp filter, bool positions, const std::string& name) {
  const std::uint32_t ws = warp_size();
  // Every element can append one node to the next frontier.
  if (!state.next_frontier_array.empty()) map_.reserve(state.next_frontier_array, count);
  if (mode_ == Mode::kBaseline) {
    Kernel k;
    k.name = name;
    state.use_iru = false;
    state.slice_first = 0;
    for (std::uint64_t first = 0; first < count; first += ws) {
      k.warps.push_back(std::make_unique<ContractProgram>(state, first, std::min<std::uint64_t>(ws, count - first)));
    }
    run(k);
    return;
  }
  state.use_iru = true;
  const std::string target = algo_ == Algorithm::kBfs ? "label" : algo_ == Algorithm::kSssp ? "dist" : "next_rank";
  const std::string attr = algo_ == Algorithm::kSssp ? "edge_dist" : "edge_contrib";
  for (std::uint64_t first = 0; first < count; first += kIruSlice) {
    const std::uint64_t n = std::min(kIruSlice, count - first);
    Kernel k;
    k.name = name;
    IruConfig cfg = opts_.iru;
    cfg.partitions = opts_.gpu.num_mem_partitions;
    cfg.elems_per_entry = ws;
    cfg.target_base = map_[target].base;
    cfg.target_elem_width = map_[target].elem_width;
    cfg.indices_base = map_["edge_frontier"].at(first);
    cfg.num_elements = n;
    cfg.secondary_base.reset();
    if (!secondary.empty()) cfg.secondary_base = map_[attr].at(first);
    cfg.return_positions = positions;
    cfg.filter_op = filter;
    map_.check_iru(cfg);
    k.iru = cfg;
    k.iru_input.indices = std::span<const std::uint32_t>(state.edge_frontier->data() + first, n);
    if (!secondary.empty()) k.iru_input.secondary = secondary.subspan(first, n);
    state.slice_first = first;
    for (std::uint64_t w = 0; w < (n + ws - 1) / ws; ++w) k.warps.push_back(std::make_unique<ContractProgram>(state));
    run(k);
  }
}

void Driver::run_chunks(const std::vector<ChunkOp>& ops, std::uint64_t count, const std::string& name) {
  Kernel k;
  k.name = name;
  const std::uint32_t ws = warp_size();
  for (std::uint64_t first = 0; first < count; first += ws) {
    k.warps.push_back(std::make_unique<ChunkProgram>(map_, ops, first, std::min<std::uint64_t>(ws, count - first), ws));
  }
  run(k);
}

WorkloadResult Driver::finish(WorkloadResult r) {
  r.algorithm = algo_;
  r.mode = mode_;
  r.metrics = gpu_.metrics();
  r.instrumented_tag = instrumented_tag(algo_);
  return r;
}

}  // namespace detail
}  // namespace irusim
