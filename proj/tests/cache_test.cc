#include <random>

#include <gtest/gtest.h>

#include "irusim/gpu/cache.h"
#include "lru_oracle.h"

using namespace irusim;
using irusim::testing::ReferenceLru;

namespace {

void run_oracle(std::uint64_t size, std::uint32_t assoc, std::uint64_t footprint_lines, std::uint64_t seed) {
  SetAssocCache cache(size, assoc, 128);
  ReferenceLru ref(size, assoc, 128);
  std::mt19937_64 rng(seed);
  std::uint64_t hits = 0;
  for (int i = 0; i < 100000; ++i) {
    // Mix a hot region with a wide cold one so both hits and evictions occur.
    const std::uint64_t line = (rng() % 4 == 0) ? rng() % footprint_lines : rng() % (footprint_lines / 8 + 1);
    const Address block = line * 128;
    const int op = static_cast<int>(rng() % 10);
    if (op == 0) {
      ASSERT_EQ(cache.probe_write(block), ref.probe(block)) << "access " << i;
    } else {
      const bool write = op == 1;
      const CacheLookup got = cache.access(block, static_cast<Cycle>(i), write);
      const ReferenceLru::Result want = ref.access(block, write);
      ASSERT_EQ(got.hit, want.hit) << "access " << i;
      ASSERT_EQ(got.dirty_victim, want.dirty_victim) << "access " << i;
      hits += got.hit;
    }
  }
  EXPECT_GT(hits, 1000u);
  EXPECT_LT(hits, 99000u);
  EXPECT_LE(cache.counters().misses, cache.counters().accesses);
}

}  // namespace

TEST(Cache, MissThenHit) {
  SetAssocCache c(32 * 1024, 4, 128);
  EXPECT_FALSE(c.access(0, 0).hit);
  EXPECT_TRUE(c.access(0, 1).hit);
  EXPECT_EQ(c.counters(), (CacheCounters{2, 1}));
}

TEST(Cache, LruEvictsOldest) {
  // 2-way, 2 sets: blocks 0, 256, 512 all map to set 0.
  SetAssocCache c(512, 2, 128);
  ASSERT_EQ(c.num_sets(), 2u);
  c.access(0, 0);
  c.access(256, 0);
  c.access(512, 0);
  EXPECT_FALSE(c.contains(0));
  EXPECT_FALSE(c.access(0, 0).hit);
  // Touching 512 makes 256 the LRU line.
  SetAssocCache d(512, 2, 128);
  d.access(0, 0);
  d.access(256, 0);
  d.access(0, 0);
  d.access(512, 0);
  EXPECT_TRUE(d.contains(0));
  EXPECT_FALSE(d.contains(256));
}

TEST(Cache, PendingFillDelaysHit) {
  SetAssocCache c(32 * 1024, 4, 128);
  c.access(128, 10);
  c.fill_ready(128, 500);
  const CacheLookup l = c.access(128, 20);
  EXPECT_TRUE(l.hit);
  EXPECT_EQ(l.ready, 500u);
  EXPECT_EQ(c.access(128, 900).ready, 900u);
}

TEST(Cache, WriteProbeDoesNotAllocate) {
  SetAssocCache c(32 * 1024, 4, 128);
  EXPECT_FALSE(c.probe_write(0));
  EXPECT_FALSE(c.contains(0));
}

TEST(Cache, DirtyVictimReported) {
  SetAssocCache c(256, 1, 128);  // direct mapped, 2 sets
  c.access(0, 0, true);
  const CacheLookup l = c.access(256, 1);
  ASSERT_TRUE(l.dirty_victim);
  EXPECT_EQ(*l.dirty_victim, 0u);
  EXPECT_FALSE(c.access(0, 2).dirty_victim);  // 256 was clean
}

TEST(Cache, RejectsBadGeometry) {
  EXPECT_THROW(SetAssocCache(1000, 4, 128), ConfigError);
  EXPECT_THROW(SetAssocCache(1024, 0, 128), ConfigError);
}

TEST(CacheOracle, L1GeometryMatchesReferenceLru) { run_oracle(32 * 1024, 4, 2048, 1); }

TEST(CacheOracle, L2SliceGeometryMatchesReferenceLru) { run_oracle(512 * 1024, 16, 16384, 2); }

TEST(CacheOracle, DirectMappedMatchesReferenceLru) { run_oracle(8 * 1024, 1, 512, 3); }
