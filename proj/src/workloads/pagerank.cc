#include <bit>

#include "driver.h"

namespace irusim {

WorkloadResult pagerank_run(const CsrGraph& g, Mode mode, const WorkloadOptions& opts) {
  if (opts.iterations == 0) throw ConfigError("pagerank needs at least one iteration");
  if (g.num_nodes == 0) throw ConfigError("pagerank on an empty graph");
  detail::Driver d(g, Algorithm::kPageRank, mode, opts);
  AddressMap& map = d.map();
  const std::uint64_t n = g.num_nodes;
  const std::uint64_t m = std::max<std::uint64_t>(g.num_edges, 1);
  map.add("row_offsets", 4, n + 1);
  map.add("col_indices", 4, m);
  map.add("rank", 4, n);
  map.add("next_rank", 4, n);
  map.add("edge_frontier", 4, m);
  map.add("edge_contrib", 4, m);

  const double dn = static_cast<double>(n);
  std::vector<double> rank(n, 1.0 / dn);
  std::vector<double> acc(n, 0.0);
  std::vector<NodeId> edge_frontier;
  std::vector<std::uint32_t> contrib;
  const std::vector<ChunkOp> update{{AccessKind::kLoad, "pr.update_load_next_rank", "next_rank"},
                                    {AccessKind::kStore, "pr.update_store_rank", "rank"},
                                    {AccessKind::kStore, "pr.update_clear_next_rank", "next_rank"}};

  for (std::uint32_t it = 0; it < opts.iterations; ++it) {
    ExpandSpec spec{&g, &map, "pr.", "", {"rank"}, {"col_indices"}, {"edge_frontier", "edge_contrib"},
                    d.warp_size()};
    d.expand(spec, {}, "pr.expand");
    edge_frontier.clear();
    contrib.clear();
    for (NodeId u = 0; u < n; ++u) {
      const std::uint64_t deg = g.out_degree(u);
      if (deg == 0) continue;
      // Contributions travel as 32-bit floats.
      const auto c = std::bit_cast<std::uint32_t>(static_cast<float>(rank[u] / static_cast<double>(deg)));
      for (EdgeIndex e = g.row_offsets[u]; e < g.row_offsets[u + 1]; ++e) {
        edge_frontier.push_back(g.col_indices[e]);
        contrib.push_back(c);
      }
    }

    ContractState st;
    st.algo = Algorithm::kPageRank;
    st.map = &map;
    st.warp_size = d.warp_size();
    st.edge_frontier = &edge_frontier;
    st.edge_attr = &contrib;
    st.next_rank = &acc;
    d.contract(st, edge_frontier.size(), contrib, FilterOp::kFloatAdd, false, "pr.contract");

    d.run_chunks(update, n, "pr.update");
    for (NodeId v = 0; v < n; ++v) {
      rank[v] = (1.0 - opts.damping) / dn + opts.damping * acc[v];
      acc[v] = 0.0;
    }
  }

  WorkloadResult r;
  r.ranks = std::move(rank);
  r.iterations = opts.iterations;
  return d.finish(std::move(r));
}

}  // namespace irusim
