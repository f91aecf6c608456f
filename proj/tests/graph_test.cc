#include <algorithm>
#include <fstream>
#include <map>
#include <random>
#include <tuple>

#include <gtest/gtest.h>

#include "irusim/graph/graph.h"

using namespace irusim;

namespace {

using EdgeKey = std::tuple<NodeId, NodeId, float>;

// In a list where any edge is weighted, weightless edges count as weight 1.
std::map<EdgeKey, int> multiset_of(const EdgeList& el) {
  const bool weighted = std::any_of(el.edges.begin(), el.edges.end(), [](const Edge& e) { return e.weight.has_value(); });
  std::map<EdgeKey, int> m;
  for (const Edge& e : el.edges) ++m[{e.src, e.dst, e.weight.value_or(weighted ? 1.0f : -1.0f)}];
  return m;
}

std::map<EdgeKey, int> multiset_of(const CsrGraph& g) {
  std::map<EdgeKey, int> m;
  for (NodeId u = 0; u < g.num_nodes; ++u) {
    for (EdgeIndex e = g.row_offsets[u]; e < g.row_offsets[u + 1]; ++e) {
      ++m[{u, g.col_indices[e], g.weights ? (*g.weights)[e] : -1.0f}];
    }
  }
  return m;
}

bool any_contains(const std::vector<std::string>& report, const std::string& needle) {
  return std::any_of(report.begin(), report.end(),
                     [&](const std::string& s) { return s.find(needle) != std::string::npos; });
}

}  // namespace

TEST(MatrixMarket, PatternSymmetricExpandsBothDirections) {
  const EdgeList el = parse_matrix_market(
      "%%MatrixMarket matrix coordinate pattern symmetric\n"
      "2 2 1\n"
      "2 1\n");
  ASSERT_EQ(el.edges.size(), 2u);
  EXPECT_EQ(el.edges[0], (Edge{1, 0, std::nullopt}));
  EXPECT_EQ(el.edges[1], (Edge{0, 1, std::nullopt}));
  EXPECT_EQ(el.num_nodes, 2u);
}

TEST(MatrixMarket, RealGeneralIsOneBased) {
  const EdgeList el = parse_matrix_market(
      "%%MatrixMarket matrix coordinate real general\n"
      "% a comment\n"
      "3 3 1\n"
      "1 2 3.5\n");
  ASSERT_EQ(el.edges.size(), 1u);
  EXPECT_EQ(el.edges[0], (Edge{0, 1, 3.5f}));
}

TEST(MatrixMarket, OutOfBoundsCoordinateReportsLine) {
  try {
    parse_matrix_market("%%MatrixMarket matrix coordinate pattern general\n4 4 1\n5 1\n");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_NE(std::string(e.what()).find("coordinate out of bounds"), std::string::npos);
  }
}

TEST(MatrixMarket, MalformedHeaderAndCoordinates) {
  EXPECT_THROW(parse_matrix_market("%%MatrixMarket matrix array real general\n2 2\n"), ParseError);
  EXPECT_THROW(parse_matrix_market("1 2\n"), ParseError);
  EXPECT_THROW(parse_matrix_market("%%MatrixMarket matrix coordinate pattern general\n2 2 1\n1.5 2\n"), ParseError);
}

TEST(EdgeListFormat, Examples) {
  EdgeList a = parse_edge_list("0 1\n1 2\n");
  ASSERT_EQ(a.edges.size(), 2u);
  EXPECT_EQ(a.edges[0], (Edge{0, 1, std::nullopt}));
  EXPECT_EQ(a.edges[1], (Edge{1, 2, std::nullopt}));

  EdgeList b = parse_edge_list("# c\n0 1 7\n");
  ASSERT_EQ(b.edges.size(), 1u);
  EXPECT_EQ(b.edges[0], (Edge{0, 1, 7.0f}));

  try {
    parse_edge_list("0 x\n");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1u);
  }
}

TEST(EdgeListFormat, LoadsFromDisk) {
  const std::string path = ::testing::TempDir() + "irusim_graph_test.el";
  {
    std::ofstream f(path);
    f << "0 2\n2 1 4\n";
  }
  const EdgeList el = load_edge_list(path);
  ASSERT_EQ(el.edges.size(), 2u);
  EXPECT_EQ(el.num_nodes, 3u);
  EXPECT_EQ(el.edges[1], (Edge{2, 1, 4.0f}));
}

TEST(Rmat, DeterministicForSeed) {
  RmatParams p;
  p.scale = 2;
  p.edge_factor = 2;
  p.seed = 42;
  EXPECT_EQ(generate_rmat(p).edges, generate_rmat(p).edges);
  RmatParams q = p;
  q.scale = 8;
  q.seed = 43;
  RmatParams r = q;
  r.seed = 44;
  EXPECT_NE(generate_rmat(q).edges, generate_rmat(r).edges);
}

TEST(Rmat, CountsAndSkewAtScale14) {
  RmatParams p;
  p.scale = 14;
  p.edge_factor = 16;
  const EdgeList el = generate_rmat(p);
  EXPECT_EQ(el.num_nodes, 16384u);
  EXPECT_EQ(el.edges.size(), 262144u);
  std::vector<std::uint64_t> deg(el.num_nodes, 0);
  for (const Edge& e : el.edges) ++deg[e.src];
  const double mean = static_cast<double>(el.edges.size()) / static_cast<double>(el.num_nodes);
  const double max = static_cast<double>(*std::max_element(deg.begin(), deg.end()));
  EXPECT_GT(max / mean, 10.0);
}

TEST(Rmat, RejectsBadProbabilities) {
  RmatParams p;
  p.a = 0.6;
  p.b = 0.3;
  p.c = 0.2;
  EXPECT_THROW(generate_rmat(p), ConfigError);
}

TEST(Grid, Examples) {
  EXPECT_EQ(generate_grid(2, 2).edges.size(), 8u);
  EXPECT_EQ(generate_grid(1, 1).edges.size(), 0u);
  const CsrGraph g = csr_from_edge_list(generate_grid(3, 3));
  EXPECT_EQ(g.out_degree(4), 4u);
  EXPECT_EQ(g.out_degree(0), 2u);
  // 4-neighbour lattice of W x H has 2 * (H*(W-1) + W*(H-1)) directed edges.
  EXPECT_EQ(generate_grid(7, 5).edges.size(), 2u * (5 * 6 + 7 * 4));
}

TEST(Csr, Examples) {
  EdgeList el{{{0, 1, std::nullopt}, {0, 2, std::nullopt}, {1, 0, std::nullopt}}, 3};
  const CsrGraph g = csr_from_edge_list(el, 3);
  EXPECT_EQ(g.row_offsets, (std::vector<EdgeIndex>{0, 2, 3, 3}));
  EXPECT_EQ(g.col_indices, (std::vector<NodeId>{1, 2, 0}));

  EdgeList dup{{{0, 1, std::nullopt}, {0, 1, std::nullopt}}, 2};
  EXPECT_EQ(csr_from_edge_list(dup, 2, true).num_edges, 1u);
  EXPECT_EQ(csr_from_edge_list(dup, 2, false).num_edges, 2u);

  EXPECT_EQ(csr_from_edge_list(EdgeList{{}, 2}, 2).row_offsets, (std::vector<EdgeIndex>{0, 0, 0}));
}

TEST(Csr, DedupeKeepsFirstWeight) {
  EdgeList el{{{0, 1, 5.0f}, {0, 1, 2.0f}, {1, 0, 1.0f}}, 2};
  const CsrGraph g = csr_from_edge_list(el, 2, true);
  ASSERT_EQ(g.num_edges, 2u);
  EXPECT_EQ((*g.weights)[0], 5.0f);
}

TEST(Csr, RejectsIdsOutOfRangeAndOversizeGraphs) {
  EdgeList el{{{0, 3, std::nullopt}}, 3};
  EXPECT_THROW(csr_from_edge_list(el, 3), ConfigError);
  EXPECT_THROW(csr_from_edge_list(EdgeList{{}, kMaxIndexDomain}, kMaxIndexDomain), ConfigError);
}

TEST(Csr, StableWithinRow) {
  EdgeList el{{{1, 2, std::nullopt}, {0, 3, std::nullopt}, {1, 0, std::nullopt}, {1, 3, std::nullopt}}, 4};
  const CsrGraph g = csr_from_edge_list(el, 4);
  EXPECT_EQ(g.col_indices, (std::vector<NodeId>{3, 2, 0, 3}));
}

TEST(ValidateCsr, Examples) {
  const CsrGraph chain = csr_from_edge_list(EdgeList{{{0, 1, std::nullopt}, {1, 2, std::nullopt}}, 3}, 3);
  EXPECT_TRUE(validate_csr(chain).empty());

  CsrGraph bad;
  bad.num_nodes = 2;
  bad.num_edges = 1;
  bad.row_offsets = {0, 2, 1};
  bad.col_indices = {0};
  EXPECT_TRUE(any_contains(validate_csr(bad), "nonmonotonic at 2"));

  CsrGraph oob = chain;
  oob.col_indices[1] = 9;
  EXPECT_TRUE(any_contains(validate_csr(oob), "index out of range"));

  CsrGraph w = chain;
  w.weights = std::vector<float>{1.0f};
  EXPECT_FALSE(validate_csr(w).empty());
}

// Every loader/generator output survives CSR construction and validation, and
// construction without dedupe preserves the edge multiset.
TEST(CsrProperty, ValidAndMultisetPreserving) {
  std::vector<EdgeList> inputs;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    RmatParams p;
    p.scale = 6 + static_cast<int>(seed);
    p.edge_factor = 4;
    p.seed = seed;
    EdgeList el = generate_rmat(p);
    assign_random_weights(el, 100, seed);
    inputs.push_back(el);
    inputs.push_back(symmetrize(generate_rmat(p)));
  }
  inputs.push_back(generate_grid(13, 9));
  inputs.push_back(parse_edge_list("0 0\n0 0\n3 1 2\n"));
  inputs.push_back(parse_matrix_market("%%MatrixMarket matrix coordinate integer symmetric\n4 4 2\n1 1 3\n4 2 7\n"));
  std::mt19937_64 rng(9);
  for (int t = 0; t < 20; ++t) {
    EdgeList el;
    el.num_nodes = 1 + rng() % 50;
    const int m = static_cast<int>(rng() % 200);
    for (int i = 0; i < m; ++i) {
      el.edges.push_back({static_cast<NodeId>(rng() % el.num_nodes), static_cast<NodeId>(rng() % el.num_nodes),
                          std::nullopt});
    }
    inputs.push_back(el);
  }
  for (const EdgeList& el : inputs) {
    const CsrGraph g = csr_from_edge_list(el);
    EXPECT_TRUE(validate_csr(g).empty());
    EXPECT_EQ(multiset_of(el), multiset_of(g));
    EXPECT_TRUE(validate_csr(csr_from_edge_list(el, el.num_nodes, true)).empty());
  }
}

TEST(Weights, DeterministicAndInRange) {
  RmatParams p;
  p.scale = 8;
  EdgeList a = generate_rmat(p);
  EdgeList b = a;
  assign_random_weights(a, 16, 5);
  assign_random_weights(b, 16, 5);
  EXPECT_EQ(a.edges, b.edges);
  for (const Edge& e : a.edges) {
    ASSERT_TRUE(e.weight);
    EXPECT_GE(*e.weight, 1.0f);
    EXPECT_LE(*e.weight, 16.0f);
  }
  const CsrGraph unit = with_unit_weights(csr_from_edge_list(generate_grid(3, 3)));
  ASSERT_TRUE(unit.weighted());
  for (float w : *unit.weights) EXPECT_EQ(w, 1.0f);
}
