#include <sstream>

#include <gtest/gtest.h>

#include "json.hpp"

#include "irusim/metrics/report.h"

using namespace irusim;

namespace {

MetricsCounters counters(std::uint64_t l1, std::uint64_t l2, std::uint64_t noc, Cycle cycles) {
  MetricsCounters c;
  c.cycles = cycles;
  c.memory.l1.resize(2);
  c.memory.l1[0].accesses = l1 / 2;
  c.memory.l1[1].accesses = l1 - l1 / 2;
  c.memory.l2.resize(1);
  c.memory.l2[0].accesses = l2;
  c.memory.noc.sm_to_mp_bytes = noc;
  c.memory.dram_reads = l2 / 4;
  c.warp_instructions = 10;
  c.transactions = 40;
  c.per_tag["g"] = {4, 16, 100};
  c.per_tag["other"] = {6, 24, 150};
  return c;
}

RunRecord record(const std::string& mode, const MetricsCounters& c) {
  return {{"bfs/rmat/seed1", "bfs", "rmat:scale=4", 1}, mode, "g", c};
}

std::string csv_of(const std::vector<RunRecord>& runs, const std::vector<ComparisonReport>& cmps) {
  std::ostringstream s;
  emit_csv(s, runs, cmps);
  return s.str();
}

std::string json_of(const std::vector<RunRecord>& runs, const std::vector<ComparisonReport>& cmps) {
  std::ostringstream s;
  emit_json(s, runs, cmps);
  return s.str();
}

}  // namespace

TEST(Compare, IdenticalRunsNormalizeToOne) {
  const MetricsCounters c = counters(100, 50, 800, 1000);
  const ComparisonReport r = compare(c, c, "g");
  EXPECT_EQ(*r.normalized_l1_accesses, 1.0);
  EXPECT_EQ(*r.normalized_l2_accesses, 1.0);
  EXPECT_EQ(*r.normalized_noc_bytes, 1.0);
  EXPECT_EQ(*r.speedup, 1.0);
  EXPECT_EQ(*r.tx_per_warp_instruction_baseline, 4.0);
}

TEST(Compare, HandComputedRatios) {
  const ComparisonReport r = compare(counters(100, 50, 800, 200), counters(50, 40, 200, 150), "g");
  EXPECT_DOUBLE_EQ(*r.normalized_l1_accesses, 0.5);
  EXPECT_DOUBLE_EQ(*r.normalized_l2_accesses, 0.8);
  EXPECT_DOUBLE_EQ(*r.normalized_noc_bytes, 0.25);
  EXPECT_DOUBLE_EQ(*r.speedup, 200.0 / 150.0);
  // Empty tag means every memory instruction.
  EXPECT_EQ(*compare(counters(1, 1, 1, 1), counters(1, 1, 1, 1)).tx_per_warp_instruction_iru, 4.0);
}

TEST(Compare, ZeroDenominatorsAreUndefined) {
  const MetricsCounters zero;
  const ComparisonReport r = compare(zero, counters(10, 10, 10, 10), "g");
  EXPECT_FALSE(r.normalized_l1_accesses);
  EXPECT_FALSE(r.normalized_noc_bytes);
  EXPECT_FALSE(r.tx_per_warp_instruction_baseline);
  EXPECT_FALSE(r.filtered_fraction);
  EXPECT_TRUE(r.speedup);
  EXPECT_FALSE(safe_ratio(1.0, 0.0));
}

TEST(Compare, MismatchedRunsRejected) {
  RunRecord a = record("baseline", counters(1, 1, 1, 1));
  RunRecord b = record("iru", counters(1, 1, 1, 1));
  b.id.seed = 2;
  EXPECT_THROW(compare(a, b), ConfigError);
  b = record("iru", counters(1, 1, 1, 1));
  b.instrumented_tag = "x";
  EXPECT_THROW(compare(a, b), ConfigError);
  b.instrumented_tag = "g";
  EXPECT_EQ(compare(a, b).id, a.id);
}

TEST(Csv, HeaderOnlyWhenEmpty) { EXPECT_EQ(csv_of({}, {}), std::string(kCsvHeader) + "\n"); }

TEST(Csv, RowsCarryIdentityAndUndefinedIsEmpty) {
  const RunRecord base = record("baseline", counters(100, 50, 800, 200));
  const RunRecord iru = record("iru", counters(50, 40, 200, 150));
  const std::string csv = csv_of({base, iru}, {compare(base, iru)});
  EXPECT_NE(csv.find("bfs/rmat/seed1,bfs,rmat:scale=4,iru_vs_baseline,normalized_l1_accesses_iru_over_baseline,0.5\n"),
            std::string::npos);
  EXPECT_NE(csv.find("iru_vs_baseline,filtered_fraction,\n"), std::string::npos);
  EXPECT_NE(csv.find(",baseline,cycles,200\n"), std::string::npos);
  // Graph labels with commas are quoted.
  RunRecord odd = base;
  odd.id.graph = "rmat:scale=4,ef=2";
  EXPECT_NE(csv_of({odd}, {}).find("\"rmat:scale=4,ef=2\""), std::string::npos);
}

TEST(Csv, ByteIdenticalForEqualInputs) {
  const RunRecord base = record("baseline", counters(100, 50, 800, 200));
  const RunRecord iru = record("iru", counters(50, 40, 200, 150));
  EXPECT_EQ(csv_of({base, iru}, {compare(base, iru)}), csv_of({base, iru}, {compare(base, iru)}));
  EXPECT_EQ(json_of({base, iru}, {compare(base, iru)}), json_of({base, iru}, {compare(base, iru)}));
}

TEST(Json, RoundTripIsStable) {
  const RunRecord base = record("baseline", counters(100, 50, 800, 200));
  const RunRecord iru = record("iru", counters(50, 40, 200, 150));
  const std::string text = json_of({base, iru}, {compare(base, iru)});
  const auto doc = nlohmann::ordered_json::parse(text);
  EXPECT_EQ(doc["schema_version"], kJsonSchemaVersion);
  ASSERT_EQ(doc["runs"].size(), 2u);
  EXPECT_EQ(doc["runs"][1]["mode"], "iru");
  EXPECT_EQ(doc["runs"][0]["metrics"]["cycles"], 200);
  const auto& cmp = doc["comparisons"][0]["metrics"];
  EXPECT_DOUBLE_EQ(cmp["normalized_l1_accesses_iru_over_baseline"].get<double>(), 0.5);
  EXPECT_TRUE(cmp["filtered_fraction"].is_null());
  std::ostringstream again;
  again << doc.dump(2);
  EXPECT_EQ(nlohmann::ordered_json::parse(again.str()), doc);
}

TEST(Summary, ListsHeadlineMetrics) {
  const RunRecord base = record("baseline", counters(100, 50, 800, 200));
  const RunRecord iru = record("iru", counters(50, 40, 200, 150));
  std::ostringstream s;
  emit_summary(s, {compare(base, iru)});
  EXPECT_NE(s.str().find("bfs/rmat/seed1"), std::string::npos);
  EXPECT_NE(s.str().find("0.5000"), std::string::npos);
  EXPECT_NE(s.str().find("undefined"), std::string::npos);
}

TEST(Metrics, PerTagSumsMatchTotals) {
  const MetricsCounters c = counters(1, 1, 1, 1);
  TagStats sum;
  for (const auto& [tag, s] : c.per_tag) sum += s;
  EXPECT_EQ(sum.transactions, c.transactions);
  EXPECT_EQ(sum.warp_instructions, c.warp_instructions);
  EXPECT_EQ(c.tag("g")->transactions_per_instruction(), 4.0);
  EXPECT_FALSE(c.tag("missing"));
}

TEST(Metrics, FilteredFraction) {
  MetricsCounters c;
  EXPECT_FALSE(c.filtered_fraction());
  c.iru.resize(2);
  c.iru[0].inserted = 30;
  c.iru[0].filter_merged = 10;
  c.iru[1].inserted = 10;
  c.iru[1].filter_merged = 0;
  EXPECT_DOUBLE_EQ(*c.filtered_fraction(), 0.25);
}

TEST(WriteFiles, UnwritablePathNamed) {
  try {
    write_csv("/nonexistent-dir/x.csv", {}, {});
    FAIL();
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent-dir/x.csv"), std::string::npos);
  }
}
