#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_set>

#include "irusim/graph/graph.h"

namespace irusim {

CsrGraph csr_from_edge_list(const EdgeList& edges, std::uint64_t num_nodes, bool dedupe) {
  if (num_nodes >= kMaxIndexDomain) {
    throw ConfigError("graph has " + std::to_string(num_nodes) +
                      " nodes; node ids must fit the 24-bit IRU index width");
  }
  for (const Edge& e : edges.edges) {
    if (e.src >= num_nodes || e.dst >= num_nodes) {
      throw ConfigError("edge (" + std::to_string(e.src) + "," + std::to_string(e.dst) +
                        ") references a node id >= " + std::to_string(num_nodes));
    }
    if (e.weight && (!(*e.weight >= 0.0f) || !std::isfinite(*e.weight))) {
      throw ConfigError("edge (" + std::to_string(e.src) + "," + std::to_string(e.dst) +
                        ") has a negative or non-finite weight");
    }
  }
  const bool weighted = std::any_of(edges.edges.begin(), edges.edges.end(),
                                    [](const Edge& e) { return e.weight.has_value(); });

  // Keep-first dedupe before counting so the counting sort stays stable.
  std::vector<char> keep(edges.edges.size(), 1);
  if (dedupe) {
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(edges.edges.size());
    for (std::size_t i = 0; i < edges.edges.size(); ++i) {
      const auto key = (static_cast<std::uint64_t>(edges.edges[i].src) << 32) | edges.edges[i].dst;
      if (!seen.insert(key).second) keep[i] = 0;
    }
  }

  CsrGraph g;
  g.num_nodes = num_nodes;
  g.row_offsets.assign(num_nodes + 1, 0);
  for (std::size_t i = 0; i < edges.edges.size(); ++i) {
    if (keep[i]) ++g.row_offsets[edges.edges[i].src + 1];
  }
  for (std::uint64_t v = 0; v < num_nodes; ++v) g.row_offsets[v + 1] += g.row_offsets[v];
  g.num_edges = g.row_offsets[num_nodes];
  g.col_indices.resize(g.num_edges);
  if (weighted) g.weights.emplace(g.num_edges, 1.0f);
  std::vector<EdgeIndex> cursor(g.row_offsets.begin(), g.row_offsets.end() - 1);
  for (std::size_t i = 0; i < edges.edges.size(); ++i) {
    if (!keep[i]) continue;
    const Edge& e = edges.edges[i];
    const EdgeIndex slot = cursor[e.src]++;
    g.col_indices[slot] = e.dst;
    if (weighted) (*g.weights)[slot] = e.weight.value_or(1.0f);
  }
  return g;
}

CsrGraph csr_from_edge_list(const EdgeList& edges) { return csr_from_edge_list(edges, edges.num_nodes); }

std::vector<std::string> validate_csr(const CsrGraph& g) {
  std::vector<std::string> report;
  if (g.num_nodes >= kMaxIndexDomain) {
    report.push_back("num_nodes " + std::to_string(g.num_nodes) + " exceeds the 24-bit index limit");
  }
  if (g.row_offsets.size() != g.num_nodes + 1) {
    report.push_back("row_offsets has " + std::to_string(g.row_offsets.size()) + " entries, expected " +
                     std::to_string(g.num_nodes + 1));
  }
  if (!g.row_offsets.empty()) {
    if (g.row_offsets.front() != 0) report.push_back("row_offsets[0] is not 0");
    for (std::size_t i = 1; i < g.row_offsets.size(); ++i) {
      if (g.row_offsets[i] < g.row_offsets[i - 1]) report.push_back("nonmonotonic at " + std::to_string(i));
    }
    if (g.row_offsets.back() != g.num_edges) {
      report.push_back("row_offsets[num_nodes] = " + std::to_string(g.row_offsets.back()) +
                       " but num_edges = " + std::to_string(g.num_edges));
    }
  }
  if (g.col_indices.size() != g.num_edges) {
    report.push_back("col_indices has " + std::to_string(g.col_indices.size()) + " entries, expected " +
                     std::to_string(g.num_edges));
  }
  for (std::size_t i = 0; i < g.col_indices.size(); ++i) {
    if (g.col_indices[i] >= g.num_nodes) {
      report.push_back("index out of range at " + std::to_string(i) + ": " + std::to_string(g.col_indices[i]));
    }
  }
  if (g.weights) {
    if (g.weights->size() != g.num_edges) {
      report.push_back("weights has " + std::to_string(g.weights->size()) + " entries, expected " +
                       std::to_string(g.num_edges));
    }
    for (std::size_t i = 0; i < g.weights->size(); ++i) {
      const float w = (*g.weights)[i];
      if (!(w >= 0.0f) || !std::isfinite(w)) report.push_back("negative or non-finite weight at " + std::to_string(i));
    }
  }
  return report;
}

CsrGraph with_unit_weights(CsrGraph g) {
  if (!g.weights) g.weights.emplace(g.num_edges, 1.0f);
  return g;
}

}  // namespace irusim
