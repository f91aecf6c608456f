#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "irusim/graph/graph.h"
#include "irusim/workloads/address_map.h"
#include "irusim/workloads/reference.h"
#include "irusim/workloads/software_filter.h"
#include "irusim/workloads/workloads.h"

using namespace irusim;

namespace {

CsrGraph graph_of(std::uint64_t n, const std::vector<std::tuple<NodeId, NodeId, float>>& edges) {
  EdgeList el;
  el.num_nodes = n;
  for (const auto& [s, d, w] : edges) el.edges.push_back({s, d, w});
  return csr_from_edge_list(el);
}

CsrGraph unweighted(std::uint64_t n, const std::vector<std::pair<NodeId, NodeId>>& edges) {
  EdgeList el;
  el.num_nodes = n;
  for (const auto& [s, d] : edges) el.edges.push_back({s, d, std::nullopt});
  return csr_from_edge_list(el);
}

CsrGraph rmat(int scale, int ef, std::uint64_t seed) {
  RmatParams p;
  p.scale = scale;
  p.edge_factor = ef;
  p.seed = seed;
  EdgeList el = generate_rmat(p);
  assign_random_weights(el, 64, seed);
  return csr_from_edge_list(el);
}

std::vector<CsrGraph> corpus() {
  std::vector<CsrGraph> gs;
  gs.push_back(unweighted(1, {}));
  gs.push_back(unweighted(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}}));
  gs.push_back(graph_of(4, {{0, 1, 7}, {0, 2, 1}, {2, 1, 3}, {1, 3, 1}, {0, 3, 20}}));
  {
    EdgeList el = generate_grid(12, 9);
    assign_random_weights(el, 9, 3);
    gs.push_back(csr_from_edge_list(el));
  }
  gs.push_back(rmat(8, 8, 1));
  gs.push_back(rmat(10, 16, 2));
  return gs;
}

WorkloadOptions opts() { return WorkloadOptions{}; }

double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-30); }

}  // namespace

TEST(Bfs, ChainLevels) {
  const CsrGraph g = unweighted(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  for (Mode m : {Mode::kBaseline, Mode::kIru}) {
    EXPECT_EQ(bfs_run(g, m, opts()).levels, (std::vector<std::uint32_t>{0, 1, 2, 3, 4})) << to_string(m);
  }
}

TEST(Bfs, StarAndDisconnectedNode) {
  const CsrGraph g = unweighted(6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  for (Mode m : {Mode::kBaseline, Mode::kIru}) {
    const WorkloadResult r = bfs_run(g, m, opts());
    EXPECT_EQ(r.levels, (std::vector<std::uint32_t>{0, 1, 1, 1, 1, kUnreached}));
  }
}

TEST(Bfs, SourceOutOfRangeRejected) {
  WorkloadOptions o = opts();
  o.source = 9;
  EXPECT_THROW(bfs_run(unweighted(3, {}), Mode::kBaseline, o), ConfigError);
}

TEST(Sssp, TriangleTakesTwoHopPath) {
  const CsrGraph g = graph_of(3, {{0, 1, 5}, {0, 2, 1}, {2, 1, 1}});
  for (Mode m : {Mode::kBaseline, Mode::kIru}) {
    const WorkloadResult r = sssp_run(g, m, opts());
    EXPECT_EQ(r.distances, (std::vector<std::uint32_t>{0, 2u << kDistanceFractionBits, 1u << kDistanceFractionBits}));
    EXPECT_EQ(r.predecessors[1], 2u);
  }
}

TEST(Sssp, UnreachableStaysInfinite) {
  const CsrGraph g = graph_of(3, {{0, 1, 2}});
  EXPECT_EQ(sssp_run(g, Mode::kIru, opts()).distances[2], kInfDistance);
}

// Node 1 is first reached at distance 7, then offered 4 twice in the next
// round (through nodes 2 and 3).
TEST(Sssp, DuplicateCandidatesKeepMinimum) {
  const CsrGraph g = graph_of(4, {{0, 1, 7}, {0, 2, 1}, {2, 1, 3}, {0, 3, 4}, {3, 1, 0}});
  for (Mode m : {Mode::kBaseline, Mode::kIru}) {
    const WorkloadResult r = sssp_run(g, m, opts());
    EXPECT_EQ(r.distances[1], 4u << kDistanceFractionBits) << to_string(m);
  }
}

TEST(Sssp, NegativeWeightRejected) {
  EXPECT_THROW(sssp_run(graph_of(2, {{0, 1, -1}}), Mode::kBaseline, opts()), ConfigError);
}

TEST(PageRank, TwoCycleIsSymmetric) {
  const CsrGraph g = unweighted(2, {{0, 1}, {1, 0}});
  for (Mode m : {Mode::kBaseline, Mode::kIru}) {
    const WorkloadResult r = pagerank_run(g, m, opts());
    ASSERT_EQ(r.ranks.size(), 2u);
    EXPECT_NEAR(r.ranks[0], 0.5, 1e-12);
    EXPECT_NEAR(r.ranks[1], 0.5, 1e-12);
  }
}

TEST(PageRank, ZeroIterationsRejected) {
  WorkloadOptions o = opts();
  o.iterations = 0;
  EXPECT_THROW(pagerank_run(unweighted(2, {{0, 1}}), Mode::kIru, o), ConfigError);
}

// Two contributions to node 2 meet in the IRU and leave as one atomic lane.
TEST(PageRank, IruMergesContributionsToOneAtomic) {
  const CsrGraph g = unweighted(3, {{0, 2}, {1, 2}});
  WorkloadOptions o = opts();
  o.iterations = 1;
  const WorkloadResult base = pagerank_run(g, Mode::kBaseline, o);
  const WorkloadResult iru = pagerank_run(g, Mode::kIru, o);
  EXPECT_EQ(base.instrumented().active_lanes, 2u);
  EXPECT_EQ(iru.instrumented().active_lanes, 1u);
  EXPECT_EQ(iru.metrics.iru_total().filter_merged, 1u);
  for (int v = 0; v < 3; ++v) EXPECT_LT(rel_err(iru.ranks[v], base.ranks[v]), 1e-6);
}

TEST(SoftwareFilter, DropsLaterCopies) {
  std::vector<std::uint32_t> status(8, 0);
  const std::vector<NodeId> in{3, 3, 5};
  const SoftwareFilterResult r = software_filter(in, status, 1);
  EXPECT_EQ(r.filtered, (std::vector<NodeId>{3, 5}));
  EXPECT_EQ(r.status_reads, 3u);
  EXPECT_EQ(r.status_writes, 2u);
}

TEST(SoftwareFilter, EmptyAndDistinct) {
  std::vector<std::uint32_t> status(8, 0);
  EXPECT_TRUE(software_filter({}, status, 1).filtered.empty());
  const std::vector<NodeId> in{1, 2, 4};
  EXPECT_EQ(software_filter(in, status, 2).filtered, in);
  // A fresh stamp makes earlier marks stale.
  EXPECT_EQ(software_filter(in, status, 3).filtered, in);
}

TEST(WorkloadOracle, AllModesMatchReferences) {
  for (const CsrGraph& g : corpus()) {
    const auto bfs = bfs_reference(g, 0);
    const auto sssp = sssp_reference(g, 0);
    const auto pr = pagerank_reference(g, 3, 0.85);
    for (Mode m : {Mode::kBaseline, Mode::kIru}) {
      EXPECT_EQ(bfs_run(g, m, opts()).levels, bfs) << g.num_nodes << " " << to_string(m);
      EXPECT_EQ(sssp_run(g, m, opts()).distances, sssp) << g.num_nodes << " " << to_string(m);
      const WorkloadResult r = pagerank_run(g, m, opts());
      ASSERT_EQ(r.ranks.size(), pr.size());
      for (std::size_t v = 0; v < pr.size(); ++v) ASSERT_LT(rel_err(r.ranks[v], pr[v]), 1e-6) << v;
    }
  }
}

// Reference sanity on a hand-checked graph, independent of the simulator.
TEST(Reference, HandComputedValues) {
  const CsrGraph g = graph_of(4, {{0, 1, 7}, {0, 2, 1}, {2, 1, 3}, {1, 3, 1}, {0, 3, 20}});
  EXPECT_EQ(bfs_reference(g, 0), (std::vector<std::uint32_t>{0, 1, 1, 1}));
  const std::uint32_t one = 1u << kDistanceFractionBits;
  EXPECT_EQ(sssp_reference(g, 0), (std::vector<std::uint32_t>{0, 4 * one, one, 5 * one}));
}

TEST(Workload, TimingDoesNotChangeResults) {
  const CsrGraph g = rmat(9, 8, 5);
  WorkloadOptions slow = opts();
  slow.gpu.latency.dram = 900;
  slow.gpu.latency.l2_hit = 40;
  for (Algorithm a : {Algorithm::kBfs, Algorithm::kSssp, Algorithm::kPageRank}) {
    const WorkloadResult x = run_workload(a, g, Mode::kIru, opts());
    const WorkloadResult y = run_workload(a, g, Mode::kIru, slow);
    EXPECT_EQ(x.levels, y.levels);
    EXPECT_EQ(x.distances, y.distances);
    ASSERT_EQ(x.ranks.size(), y.ranks.size());
    for (std::size_t v = 0; v < x.ranks.size(); ++v) EXPECT_LT(rel_err(x.ranks[v], y.ranks[v]), 1e-6);
    EXPECT_NE(x.metrics.cycles, y.metrics.cycles);
  }
}

TEST(Workload, IruGatherCoalescesAtLeastAsWell) {
  const CsrGraph g = rmat(11, 16, 7);
  for (Algorithm a : {Algorithm::kBfs, Algorithm::kSssp, Algorithm::kPageRank}) {
    const WorkloadResult base = run_workload(a, g, Mode::kBaseline, opts());
    const WorkloadResult iru = run_workload(a, g, Mode::kIru, opts());
    EXPECT_EQ(base.instrumented_tag, iru.instrumented_tag);
    EXPECT_LE(iru.instrumented().transactions_per_instruction(), base.instrumented().transactions_per_instruction())
        << to_string(a);
  }
}

TEST(LoadIru, LanesFollowReply) {
  IruReply r;
  r.elements.assign(32, IruElement{0, std::nullopt, 0, false});
  r.elements[0] = {9, 4u, 2, true};
  r.elements[1] = {7, std::nullopt, 5, true};
  r.enabled_mask = 0b11;
  const auto lanes = load_iru(r);
  ASSERT_EQ(lanes.size(), 32u);
  EXPECT_TRUE(lanes[0].enabled);
  EXPECT_EQ(lanes[0].index, 9u);
  EXPECT_EQ(lanes[0].attribute, 4u);
  EXPECT_EQ(lanes[1].position, 5u);
  EXPECT_FALSE(lanes[2].enabled);
}

TEST(AddressMapTest, DisjointAlignedArrays) {
  GpuConfig cfg;
  AddressMap m(cfg);
  const MappedArray a = m.add("a", 4, 1000);
  const MappedArray b = m.add("b", 8, 33);
  EXPECT_EQ(a.base % m.alignment(), 0u);
  EXPECT_EQ(b.base % m.alignment(), 0u);
  EXPECT_GE(b.base, a.end());
  EXPECT_EQ(m.find(a.at(999))->name, "a");
  EXPECT_EQ(m.find(b.at(0))->name, "b");
  EXPECT_EQ(m.find(b.end() + 4 * m.alignment()), nullptr);
  EXPECT_THROW(m.add("a", 4, 1), ConfigError);
}

TEST(AddressMapTest, ReserveRelocatesWhenTooSmall) {
  GpuConfig cfg;
  AddressMap m(cfg);
  m.add("out", 4, 10);
  m.add("x", 4, 10);
  const Address old = m["out"].base;
  EXPECT_EQ(m.reserve("out", 5).base, old);
  const MappedArray& grown = m.reserve("out", 100000);
  EXPECT_NE(grown.base, old);
  EXPECT_GE(grown.length, 100000u);
  EXPECT_GE(grown.base, m["x"].end());
}

TEST(AddressMapTest, CheckRejectsStrayLanes) {
  GpuConfig cfg;
  AddressMap m(cfg);
  const MappedArray a = m.add("a", 4, 64);
  WarpAccess w;
  w.lane_addresses = {a.at(0), a.at(63), a.end() + 1};
  w.active_mask = 0b011;
  EXPECT_NO_THROW(m.check(w));
  w.active_mask = 0b111;
  EXPECT_THROW(m.check(w), SimulationError);
}
