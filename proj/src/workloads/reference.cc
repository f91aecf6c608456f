#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <queue>

#include "irusim/workloads/reference.h"

namespace irusim {

std::uint32_t to_fixed_weight(float w) {
  if (!(w >= 0.0f)) throw ConfigError("negative or NaN edge weight");
  const double scaled = std::round(static_cast<double>(w) * (1 << kDistanceFractionBits));
  if (scaled >= static_cast<double>(kInfDistance)) return kInfDistance - 1;
  return static_cast<std::uint32_t>(scaled);
}

std::uint32_t add_distance(std::uint32_t d, std::uint32_t w) {
  if (d == kInfDistance) return kInfDistance;
  const std::uint64_t s = static_cast<std::uint64_t>(d) + w;
  return s >= kInfDistance ? kInfDistance - 1 : static_cast<std::uint32_t>(s);
}

std::vector<std::uint32_t> bfs_reference(const CsrGraph& g, NodeId source) {
  std::vector<std::uint32_t> level(g.num_nodes, kUnreached);
  if (source >= g.num_nodes) throw ConfigError("source out of range");
  std::deque<NodeId> q{source};
  level[source] = 0;
  while (!q.empty()) {
    const NodeId u = q.front();
    q.pop_front();
    for (EdgeIndex e = g.row_offsets[u]; e < g.row_offsets[u + 1]; ++e) {
      const NodeId v = g.col_indices[e];
      if (level[v] == kUnreached) {
        level[v] = level[u] + 1;
        q.push_back(v);
      }
    }
  }
  return level;
}

std::vector<std::uint32_t> sssp_reference(const CsrGraph& g, NodeId source) {
  if (source >= g.num_nodes) throw ConfigError("source out of range");
  std::vector<std::uint32_t> dist(g.num_nodes, kInfDistance);
  using Item = std::pair<std::uint32_t, NodeId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[source] = 0;
  pq.push({0, source});
  while (!pq.empty()) {
    const auto [d, u] = pq.top();
    pq.pop();
    if (d != dist[u]) continue;
    for (EdgeIndex e = g.row_offsets[u]; e < g.row_offsets[u + 1]; ++e) {
      const float w = g.weights ? (*g.weights)[e] : 1.0f;
      const std::uint32_t nd = add_distance(d, to_fixed_weight(w));
      const NodeId v = g.col_indices[e];
      if (nd < dist[v]) {
        dist[v] = nd;
        pq.push({nd, v});
      }
    }
  }
  return dist;
}

std::vector<double> pagerank_reference(const CsrGraph& g, std::uint32_t iterations, double damping) {
  if (iterations == 0) throw ConfigError("pagerank needs at least one iteration");
  const double n = static_cast<double>(g.num_nodes);
  std::vector<double> rank(g.num_nodes, g.num_nodes ? 1.0 / n : 0.0);
  std::vector<double> acc(g.num_nodes);
  for (std::uint32_t it = 0; it < iterations; ++it) {
    std::fill(acc.begin(), acc.end(), 0.0);
    for (NodeId u = 0; u < g.num_nodes; ++u) {
      const std::uint64_t deg = g.out_degree(u);
      if (deg == 0) continue;
      const double c = rank[u] / static_cast<double>(deg);
      for (EdgeIndex e = g.row_offsets[u]; e < g.row_offsets[u + 1]; ++e) acc[g.col_indices[e]] += c;
    }
    for (NodeId v = 0; v < g.num_nodes; ++v) rank[v] = (1.0 - damping) / n + damping * acc[v];
  }
  return rank;
}

}  // namespace irusim
