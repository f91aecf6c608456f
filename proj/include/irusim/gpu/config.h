#pragma once

#include <cstdint>

#include "irusim/types.h"

namespace irusim {

// Fixed per-stage latencies in core cycles. A load that misses everywhere
// pays l1_hit + noc_per_hop + l2_hit + dram + noc_per_hop.
struct LatencyTable {
  Cycle l1_hit = 30;
  Cycle l2_hit = 190;
  Cycle dram = 350;
  Cycle noc_per_hop = 10;
  Cycle iru_pipeline = 4;

  void validate() const;
};

struct GpuConfig {
  std::uint32_t num_sms = 16;
  std::uint32_t warp_size = 32;
  std::uint32_t max_threads_per_sm = 2048;
  std::uint32_t line_size = 128;
  std::uint64_t l1_size = 32 * 1024;
  std::uint64_t l2_total = 2 * 1024 * 1024;
  std::uint32_t num_mem_partitions = 4;
  std::uint32_t l1_assoc = 4;
  std::uint32_t l2_assoc = 16;
  std::uint32_t mshr_per_l1 = 32;
  std::uint32_t interleave_lines = 1;
  LatencyTable latency;

  // Bandwidth model.
  std::uint32_t noc_flit_bytes = 32;       // per port per cycle
  std::uint32_t noc_header_bytes = 8;
  std::uint32_t store_payload_bytes = 32;  // stores and atomics, per transaction
  Cycle dram_cycles_per_line = 3;          // per channel
  Cycle atomic_cycles_per_lane = 1;        // L2 atomic unit occupancy

  Cycle max_cycles = 2'000'000'000;

  std::uint32_t warps_per_sm() const { return max_threads_per_sm / warp_size; }
  std::uint64_t l2_per_partition() const { return l2_total / num_mem_partitions; }
  void validate() const;
};

}  // namespace irusim
