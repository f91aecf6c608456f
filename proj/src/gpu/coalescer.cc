#include <algorithm>

#include "irusim/gpu/warp_access.h"

namespace irusim {

const char* to_string(AccessKind kind) {
  switch (kind) {
    case AccessKind::kLoad: return "load";
    case AccessKind::kStore: return "store";
    case AccessKind::kAtomicAdd: return "atomic_add";
    case AccessKind::kAtomicMin: return "atomic_min";
    case AccessKind::kIruRequest: return "iru_request";
  }
  return "unknown";
}

std::vector<MemoryTransaction> coalesce_warp_access(const WarpAccess& a, std::uint32_t line_size) {
  if (a.active_mask == 0) throw SimulationError("empty warp access (tag '" + a.tag + "')");
  std::vector<Address> blocks;
  blocks.reserve(static_cast<std::size_t>(a.active_lanes()));
  for (std::uint32_t lane = 0; lane < a.lane_addresses.size(); ++lane) {
    if (a.lane_active(lane)) blocks.push_back(line_of(a.lane_addresses[lane], line_size));
  }
  std::sort(blocks.begin(), blocks.end());
  std::vector<MemoryTransaction> out;
  for (std::size_t i = 0; i < blocks.size();) {
    std::size_t j = i;
    while (j < blocks.size() && blocks[j] == blocks[i]) ++j;
    out.push_back({blocks[i], a.sm_id, a.warp_id, a.kind, static_cast<std::uint32_t>(j - i)});
    i = j;
  }
  return out;
}

}  // namespace irusim
