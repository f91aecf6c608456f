#pragma once

#include <cstdint>
#include <queue>
#include <vector>

#include "irusim/gpu/cache.h"
#include "irusim/gpu/config.h"
#include "irusim/gpu/noc.h"
#include "irusim/gpu/warp_access.h"

namespace irusim {

std::uint32_t partition_of_address(Address block, const GpuConfig& cfg);

// Where the L2 accesses of a partition came from.
struct L2Sources {
  std::uint64_t l1_load_misses = 0;
  std::uint64_t l1_write_throughs = 0;
  std::uint64_t atomics = 0;
  std::uint64_t iru_fetches = 0;

  std::uint64_t total() const { return l1_load_misses + l1_write_throughs + atomics + iru_fetches; }
  friend bool operator==(const L2Sources&, const L2Sources&) = default;
};

struct MemoryCounters {
  std::vector<CacheCounters> l1;       // per SM
  std::vector<CacheCounters> l2;       // per partition
  std::vector<L2Sources> l2_sources;   // per partition
  std::uint64_t dram_reads = 0;        // L2 misses + IRU bypass fetches
  std::uint64_t dram_writes = 0;       // dirty L2 evictions
  std::uint64_t iru_bypass_reads = 0;
  std::uint64_t mshr_stall_cycles = 0;
  NocCounters noc;

  friend bool operator==(const MemoryCounters&, const MemoryCounters&) = default;
};

struct CacheAccessResult {
  bool hit = false;
  Cycle lookup = 0;   // cycle the tag check happened (after any MSHR stall)
  Cycle ready = 0;    // data available at the requester
  Cycle stall = 0;    // MSHR stall cycles
  Cycle service_latency() const { return ready - lookup; }
};

// Timing and counting model of the SIMT memory path. All reservations are made
// at issue time against per-resource free cycles.
class MemorySystem {
 public:
  explicit MemorySystem(const GpuConfig& cfg);

  const GpuConfig& config() const { return cfg_; }
  std::uint32_t partition_of(Address block) const { return partition_of_address(block, cfg_); }

  // Full load path for one transaction whose L1 tag check happens at `lookup`.
  CacheAccessResult load(std::uint32_t sm, const MemoryTransaction& tx, Cycle lookup);
  // Store: write-through, no-allocate at L1; completion is the L2 ack.
  Cycle store(std::uint32_t sm, const MemoryTransaction& tx, Cycle lookup);
  // Atomics bypass L1 and execute at the owning partition.
  Cycle atomic(std::uint32_t sm, const MemoryTransaction& tx, Cycle send);
  // L2 lookup at a partition; `arrival` is when the request reaches it.
  CacheAccessResult l2_access(std::uint32_t partition, const MemoryTransaction& tx, Cycle arrival,
                              bool write = false);
  // IRU prefetch of one line from inside the partition.
  Cycle iru_fetch(std::uint32_t partition, Address block, bool bypass_l2, Cycle now);

  Noc& noc() { return noc_; }
  const SetAssocCache& l1(std::uint32_t sm) const { return l1_[sm]; }
  const SetAssocCache& l2(std::uint32_t p) const { return l2_[p]; }
  MemoryCounters counters() const;
  // Drops resource bookings that ended before `now` (no request arrives earlier).
  void retire(Cycle now);

 private:
  struct Partition {
    Resource l2_port;
    Resource atomic_unit;  // read-modify-write lanes, beside the L2
    Resource dram;
  };

  Cycle reserve_mshr(std::uint32_t sm, Cycle lookup);

  GpuConfig cfg_;
  std::vector<SetAssocCache> l1_;
  std::vector<SetAssocCache> l2_;
  std::vector<Partition> partitions_;
  std::vector<std::priority_queue<Cycle, std::vector<Cycle>, std::greater<>>> mshrs_;
  std::vector<L2Sources> sources_;
  Noc noc_;
  std::uint64_t dram_reads_ = 0;
  std::uint64_t dram_writes_ = 0;
  std::uint64_t iru_bypass_reads_ = 0;
  std::uint64_t mshr_stall_cycles_ = 0;
};

}  // namespace irusim
