#include "driver.h"

namespace irusim {

WorkloadResult bfs_run(const CsrGraph& g, Mode mode, const WorkloadOptions& opts) {
  if (g.num_nodes == 0 || opts.source >= g.num_nodes) throw ConfigError("bfs source out of range");
  detail::Driver d(g, Algorithm::kBfs, mode, opts);
  AddressMap& map = d.map();
  const std::uint64_t n = g.num_nodes;
  const std::uint64_t m = std::max<std::uint64_t>(g.num_edges, 1);
  map.add("row_offsets", 4, n + 1);
  map.add("col_indices", 4, m);
  map.add("label", 4, n);
  map.add("node_frontier_a", 4, n);
  map.add("node_frontier_b", 4, n);
  map.add("edge_frontier", 4, m);
  map.add("frontier_counter", 4, 1);

  std::vector<std::uint32_t> label(n, kUnreached);
  label[opts.source] = 0;
  std::vector<NodeId> frontier{opts.source};
  std::vector<NodeId> edge_frontier;
  std::string cur = "node_frontier_a";
  std::string other = "node_frontier_b";
  std::uint32_t level = 0;

  while (!frontier.empty()) {
    ExpandSpec spec{&g, &map, "bfs.", cur, {}, {"col_indices"}, {"edge_frontier"}, d.warp_size()};
    d.expand(spec, frontier, "bfs.expand");
    edge_frontier.clear();
    for (NodeId u : frontier) {
      for (EdgeIndex e = g.row_offsets[u]; e < g.row_offsets[u + 1]; ++e) edge_frontier.push_back(g.col_indices[e]);
    }

    std::vector<NodeId> next;
    ContractState st;
    st.algo = Algorithm::kBfs;
    st.map = &map;
    st.warp_size = d.warp_size();
    st.edge_frontier = &edge_frontier;
    st.label = &label;
    st.level = level + 1;
    st.next_frontier = &next;
    st.next_frontier_array = other;
    d.contract(st, edge_frontier.size(), {}, FilterOp::kCompareMin, false, "bfs.contract");

    frontier = std::move(next);
    std::swap(cur, other);
    ++level;
  }

  WorkloadResult r;
  r.levels = std::move(label);
  r.iterations = level;
  return d.finish(std::move(r));
}

}  // namespace irusim
