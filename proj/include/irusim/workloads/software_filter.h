#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "irusim/types.h"

namespace irusim {

struct SoftwareFilterResult {
  std::vector<NodeId> filtered;
  std::uint64_t status_reads = 0;
  std::uint64_t status_writes = 0;
};

// Lookup-based duplicate removal used by baseline kernels: every element reads
// status[v]; the first element to see a stale stamp writes `stamp` and is kept,
// later copies see the fresh stamp and are dropped.
SoftwareFilterResult software_filter(std::span<const NodeId> frontier, std::vector<std::uint32_t>& status,
                                     std::uint32_t stamp);

}  // namespace irusim
