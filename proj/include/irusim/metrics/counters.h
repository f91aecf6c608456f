#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "irusim/gpu/memory_system.h"
#include "irusim/iru/iru.h"

namespace irusim {

struct TagStats {
  std::uint64_t warp_instructions = 0;
  std::uint64_t transactions = 0;
  std::uint64_t active_lanes = 0;

  double transactions_per_instruction() const {
    return warp_instructions ? static_cast<double>(transactions) / static_cast<double>(warp_instructions) : 0.0;
  }
  TagStats& operator+=(const TagStats& o) {
    warp_instructions += o.warp_instructions;
    transactions += o.transactions;
    active_lanes += o.active_lanes;
    return *this;
  }
  friend bool operator==(const TagStats&, const TagStats&) = default;
};

struct MetricsCounters {
  Cycle cycles = 0;
  std::uint64_t kernels = 0;
  MemoryCounters memory;
  std::uint64_t warp_instructions = 0;
  std::uint64_t transactions = 0;
  std::map<std::string, TagStats> per_tag;
  std::vector<IruPartitionCounters> iru;  // per partition, empty if the IRU never ran
  std::uint64_t iru_request_stalls = 0;
  // Software duplicate filter (baseline SSSP), elements dropped.
  std::uint64_t software_filtered = 0;

  std::uint64_t l1_accesses() const;
  std::uint64_t l1_misses() const;
  std::uint64_t l2_accesses() const;
  std::uint64_t l2_misses() const;
  std::uint64_t noc_bytes() const { return memory.noc.total_bytes(); }
  std::uint64_t dram_accesses() const { return memory.dram_reads + memory.dram_writes; }
  IruPartitionCounters iru_total() const;
  // filter_merged / inserted over all partitions; nullopt when nothing was inserted.
  std::optional<double> filtered_fraction() const;
  std::optional<TagStats> tag(const std::string& name) const;

  friend bool operator==(const MetricsCounters&, const MetricsCounters&) = default;
};

// Flat (name, value) view used by reports; order is fixed.
std::vector<std::pair<std::string, double>> flatten(const MetricsCounters& c);

}  // namespace irusim
