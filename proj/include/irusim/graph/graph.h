#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "irusim/types.h"

namespace irusim {

struct Edge {
  NodeId src = 0;
  NodeId dst = 0;
  std::optional<float> weight;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// Edges in source order. num_nodes is the declared node count (MatrixMarket
// dimensions, generator size) or max id + 1 for plain edge lists.
struct EdgeList {
  std::vector<Edge> edges;
  std::uint64_t num_nodes = 0;
};

// Compressed sparse row graph. Plain data so that invalid instances can be
// built and checked by validate_csr; csr_from_edge_list only produces valid ones.
struct CsrGraph {
  std::uint64_t num_nodes = 0;
  std::uint64_t num_edges = 0;
  std::vector<EdgeIndex> row_offsets;
  std::vector<NodeId> col_indices;
  std::optional<std::vector<float>> weights;

  std::uint64_t out_degree(NodeId v) const { return row_offsets[v + 1] - row_offsets[v]; }
  bool weighted() const { return weights.has_value(); }
};

EdgeList load_matrix_market(const std::filesystem::path& path);
EdgeList parse_matrix_market(const std::string& text);

EdgeList load_edge_list(const std::filesystem::path& path);
EdgeList parse_edge_list(const std::string& text);

struct RmatParams {
  int scale = 10;
  int edge_factor = 16;
  double a = 0.57;
  double b = 0.19;
  double c = 0.19;
  std::uint64_t seed = 1;
};

EdgeList generate_rmat(const RmatParams& params);
EdgeList generate_grid(std::uint64_t width, std::uint64_t height);

// Adds the reverse of every edge (self-loops are not doubled).
EdgeList symmetrize(const EdgeList& edges);

// Deterministic integer weights in [1, max_weight] drawn from seed.
void assign_random_weights(EdgeList& edges, std::uint32_t max_weight, std::uint64_t seed);

CsrGraph csr_from_edge_list(const EdgeList& edges, std::uint64_t num_nodes, bool dedupe = false);
// Uses the edge list's own node count.
CsrGraph csr_from_edge_list(const EdgeList& edges);

// Empty iff g satisfies every CsrGraph invariant.
std::vector<std::string> validate_csr(const CsrGraph& g);

// Unit weights for weightless graphs; weighted graphs are returned unchanged.
CsrGraph with_unit_weights(CsrGraph g);

}  // namespace irusim
