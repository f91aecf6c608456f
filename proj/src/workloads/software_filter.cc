#include "irusim/workloads/software_filter.h"

namespace irusim {

SoftwareFilterResult software_filter(std::span<const NodeId> frontier, std::vector<std::uint32_t>& status,
                                     std::uint32_t stamp) {
  SoftwareFilterResult out;
  for (NodeId v : frontier) {
    if (v >= status.size()) throw SimulationError("frontier element outside the status array");
    ++out.status_reads;
    if (status[v] == stamp) continue;
    status[v] = stamp;
    ++out.status_writes;
    out.filtered.push_back(v);
  }
  return out;
}

}  // namespace irusim
