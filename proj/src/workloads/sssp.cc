#include "driver.h"
#include "irusim/workloads/software_filter.h"

namespace irusim {

WorkloadResult sssp_run(const CsrGraph& g, Mode mode, const WorkloadOptions& opts) {
  if (g.num_nodes == 0 || opts.source >= g.num_nodes) throw ConfigError("sssp source out of range");
  std::vector<std::uint32_t> wfixed(g.num_edges, to_fixed_weight(1.0f));
  if (g.weights) {
    for (EdgeIndex e = 0; e < g.num_edges; ++e) {
      if (!((*g.weights)[e] >= 0.0f)) throw ConfigError("sssp rejects negative weight at edge " + std::to_string(e));
      wfixed[e] = to_fixed_weight((*g.weights)[e]);
    }
  }

  detail::Driver d(g, Algorithm::kSssp, mode, opts);
  AddressMap& map = d.map();
  const std::uint64_t n = g.num_nodes;
  const std::uint64_t m = std::max<std::uint64_t>(g.num_edges, 1);
  map.add("row_offsets", 4, n + 1);
  map.add("col_indices", 4, m);
  map.add("weights", 4, m);
  map.add("dist", 4, n);
  map.add("pred", 4, n);
  map.add("status", 4, n);
  map.add("node_frontier_a", 4, m + 1);
  map.add("node_frontier_b", 4, m + 1);
  map.add("candidate_frontier", 4, m + 1);
  map.add("edge_frontier", 4, m);
  map.add("edge_dist", 4, m);
  map.add("edge_src", 4, m);
  map.add("frontier_counter", 4, 1);

  std::vector<std::uint32_t> dist(n, kInfDistance);
  std::vector<NodeId> pred(n, kUnreached);
  std::vector<std::uint32_t> status(n, 0);
  dist[opts.source] = 0;
  pred[opts.source] = opts.source;
  std::vector<NodeId> frontier{opts.source};
  std::vector<NodeId> edge_frontier, edge_src;
  std::vector<std::uint32_t> edge_dist;
  std::string cur = "node_frontier_a";
  std::string other = "node_frontier_b";
  std::uint32_t iteration = 0;
  std::uint64_t software_filtered = 0;

  while (!frontier.empty()) {
    ExpandSpec spec{&g, &map, "sssp.", cur, {"dist"}, {"col_indices", "weights"},
                    {"edge_frontier", "edge_dist", "edge_src"}, d.warp_size()};
    d.expand(spec, frontier, "sssp.expand");
    edge_frontier.clear();
    edge_dist.clear();
    edge_src.clear();
    for (NodeId u : frontier) {
      for (EdgeIndex e = g.row_offsets[u]; e < g.row_offsets[u + 1]; ++e) {
        edge_frontier.push_back(g.col_indices[e]);
        edge_dist.push_back(add_distance(dist[u], wfixed[e]));
        edge_src.push_back(u);
      }
    }

    std::vector<NodeId> improved;
    ContractState st;
    st.algo = Algorithm::kSssp;
    st.map = &map;
    st.warp_size = d.warp_size();
    st.edge_frontier = &edge_frontier;
    st.edge_attr = &edge_dist;
    st.edge_src = &edge_src;
    st.dist = &dist;
    st.pred = &pred;
    st.next_frontier = &improved;
    st.next_frontier_array = mode == Mode::kBaseline ? "candidate_frontier" : other;
    d.contract(st, edge_frontier.size(), edge_dist, FilterOp::kCompareMin, true, "sssp.contract");

    std::vector<NodeId> next;
    if (mode == Mode::kBaseline) {
      // Duplicate nodes in the improved list are removed in software.
      FilterState fs;
      fs.map = &map;
      fs.warp_size = d.warp_size();
      fs.prefix = "sssp.";
      fs.input = &improved;
      fs.input_array = "candidate_frontier";
      fs.status = &status;
      fs.stamp = iteration + 1;
      fs.output = &next;
      fs.output_array = other;
      map.reserve(other, improved.size());
      Kernel k;
      k.name = "sssp.filter";
      for (std::uint64_t first = 0; first < improved.size(); first += d.warp_size()) {
        k.warps.push_back(std::make_unique<FilterProgram>(
            fs, first, std::min<std::uint64_t>(d.warp_size(), improved.size() - first)));
      }
      d.run(k);
      software_filtered += improved.size() - next.size();
    } else {
      next = std::move(improved);
    }

    frontier = std::move(next);
    std::swap(cur, other);
    ++iteration;
  }

  WorkloadResult r;
  r.distances = std::move(dist);
  r.predecessors = std::move(pred);
  r.iterations = iteration;
  r = d.finish(std::move(r));
  r.metrics.software_filtered = software_filtered;
  return r;
}

}  // namespace irusim
