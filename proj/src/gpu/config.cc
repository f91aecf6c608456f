#include <bit>

#include "irusim/gpu/config.h"

namespace irusim {

void LatencyTable::validate() const {
  if (l1_hit == 0 || l2_hit == 0 || dram == 0 || noc_per_hop == 0 || iru_pipeline == 0) {
    throw ConfigError("latencies must be positive");
  }
  if (!(l1_hit <= l2_hit && l2_hit <= dram)) throw ConfigError("latencies must satisfy l1_hit <= l2_hit <= dram");
}

void GpuConfig::validate() const {
  if (num_sms < 1 || warp_size < 1 || max_threads_per_sm < 1 || line_size < 1 || l1_size < 1 ||
      l2_total < 1 || num_mem_partitions < 1 || l1_assoc < 1 || l2_assoc < 1 || mshr_per_l1 < 1 ||
      interleave_lines < 1 || noc_flit_bytes < 1 || dram_cycles_per_line < 1 || atomic_cycles_per_lane < 1) {
    throw ConfigError("gpu counts must all be >= 1");
  }
  if (!std::has_single_bit(warp_size) || warp_size > 64) throw ConfigError("warp_size must be a power of two <= 64");
  if (max_threads_per_sm < warp_size) throw ConfigError("max_threads_per_sm must hold at least one warp");
  if (l2_total % num_mem_partitions != 0) throw ConfigError("l2_total must be divisible by num_mem_partitions");
  if (line_size % 4 != 0) throw ConfigError("line_size must be a multiple of 4 bytes");
  if (l1_size % (static_cast<std::uint64_t>(line_size) * l1_assoc) != 0) {
    throw ConfigError("l1_size must be a multiple of line_size * l1_assoc");
  }
  if (l2_per_partition() % (static_cast<std::uint64_t>(line_size) * l2_assoc) != 0) {
    throw ConfigError("l2 partition size must be a multiple of line_size * l2_assoc");
  }
  latency.validate();
}

}  // namespace irusim
