#include <algorithm>
#include <iterator>

#include "irusim/gpu/noc.h"

namespace irusim {

Cycle Resource::acquire(Cycle t, Cycle occupancy) {
  if (occupancy == 0) return t;
  // First booking that could overlap [t, ...).
  auto it = busy_.upper_bound(t);
  if (it != busy_.begin() && std::prev(it)->second > t) --it;
  Cycle start = t;
  while (it != busy_.end() && it->first < start + occupancy) {
    start = std::max(start, it->second);
    ++it;
  }
  const Cycle end = start + occupancy;
  // Merge with touching neighbours to keep the calendar short.
  auto next = busy_.find(end);
  Cycle merged_end = end;
  if (next != busy_.end()) {
    merged_end = next->second;
    busy_.erase(next);
  }
  auto prev = busy_.lower_bound(start);
  if (prev != busy_.begin() && std::prev(prev)->second == start) {
    std::prev(prev)->second = merged_end;
  } else {
    busy_.emplace(start, merged_end);
  }
  last_end_ = std::max(last_end_, merged_end);
  return start;
}

void Resource::retire(Cycle t) {
  while (!busy_.empty() && busy_.begin()->second <= t) busy_.erase(busy_.begin());
}

void Noc::retire(Cycle t) {
  for (Resource& r : sm_ports_) r.retire(t);
  for (Resource& r : mp_ports_) r.retire(t);
}

Noc::Noc(const GpuConfig& cfg)
    : flit_bytes_(cfg.noc_flit_bytes),
      header_bytes_(cfg.noc_header_bytes),
      hop_latency_(cfg.latency.noc_per_hop),
      sm_ports_(cfg.num_sms),
      mp_ports_(cfg.num_mem_partitions) {}

Resource& Noc::port(Endpoint e) {
  auto& ports = e.type == Endpoint::Type::kSm ? sm_ports_ : mp_ports_;
  if (e.id >= ports.size()) throw SimulationError("noc endpoint out of range");
  return ports[e.id];
}

NocTransfer Noc::transfer(Endpoint src, Endpoint dst, std::uint64_t payload_bytes, Cycle now) {
  if (src == dst || src.type == dst.type) throw SimulationError("noc transfers run between an SM and a partition");
  const std::uint64_t bytes = payload_bytes + header_bytes_;
  const Cycle flits = (bytes + flit_bytes_ - 1) / flit_bytes_;
  const Cycle depart = port(src).acquire(now, flits);
  if (src.type == Endpoint::Type::kSm) {
    counters_.sm_to_mp_bytes += bytes;
    ++counters_.sm_to_mp_packets;
  } else {
    counters_.mp_to_sm_bytes += bytes;
    ++counters_.mp_to_sm_packets;
  }
  return {bytes, depart, depart + hop_latency_};
}

}  // namespace irusim
