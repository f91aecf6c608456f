#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "irusim/gpu/config.h"
#include "irusim/types.h"

namespace irusim {

// A pipelined resource with a reservation calendar. Work is booked ahead of
// time (fills, DRAM slots), so a request may start in any idle gap at or
// after its arrival rather than behind the latest booking.
class Resource {
 public:
  Cycle acquire(Cycle t, Cycle occupancy);
  // Latest booked cycle; equals the next free cycle for in-order users.
  Cycle next_free() const { return last_end_; }
  // Forgets bookings that end at or before `t`; later acquires must not
  // arrive before `t`.
  void retire(Cycle t);
  std::size_t bookings() const { return busy_.size(); }

 private:
  std::map<Cycle, Cycle> busy_;  // start -> end, disjoint and non-adjacent
  Cycle last_end_ = 0;
};

struct Endpoint {
  enum class Type : std::uint8_t { kSm, kPartition };
  Type type = Type::kSm;
  std::uint32_t id = 0;

  static Endpoint sm(std::uint32_t i) { return {Type::kSm, i}; }
  static Endpoint partition(std::uint32_t i) { return {Type::kPartition, i}; }
  friend bool operator==(const Endpoint&, const Endpoint&) = default;
};

struct NocCounters {
  std::uint64_t sm_to_mp_bytes = 0;
  std::uint64_t mp_to_sm_bytes = 0;
  std::uint64_t sm_to_mp_packets = 0;
  std::uint64_t mp_to_sm_packets = 0;

  std::uint64_t total_bytes() const { return sm_to_mp_bytes + mp_to_sm_bytes; }
  NocCounters& operator+=(const NocCounters& o) {
    sm_to_mp_bytes += o.sm_to_mp_bytes;
    mp_to_sm_bytes += o.mp_to_sm_bytes;
    sm_to_mp_packets += o.sm_to_mp_packets;
    mp_to_sm_packets += o.mp_to_sm_packets;
    return *this;
  }
  friend bool operator==(const NocCounters&, const NocCounters&) = default;
};

struct NocTransfer {
  std::uint64_t bytes = 0;  // payload + header
  Cycle depart = 0;
  Cycle arrive = 0;
};

// Single-hop crossbar between SMs and memory partitions. Each endpoint has an
// injection port moving noc_flit_bytes per cycle; every packet carries a
// fixed header.
class Noc {
 public:
  explicit Noc(const GpuConfig& cfg);

  NocTransfer transfer(Endpoint src, Endpoint dst, std::uint64_t payload_bytes, Cycle now);
  const NocCounters& counters() const { return counters_; }
  void retire(Cycle t);
  std::uint32_t header_bytes() const { return header_bytes_; }

 private:
  Resource& port(Endpoint e);

  std::uint32_t flit_bytes_;
  std::uint32_t header_bytes_;
  Cycle hop_latency_;
  std::vector<Resource> sm_ports_;
  std::vector<Resource> mp_ports_;
  NocCounters counters_;
};

}  // namespace irusim
