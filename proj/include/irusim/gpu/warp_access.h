#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "irusim/types.h"

namespace irusim {

enum class AccessKind : std::uint8_t { kLoad, kStore, kAtomicAdd, kAtomicMin, kIruRequest };

const char* to_string(AccessKind kind);

inline bool is_atomic(AccessKind k) { return k == AccessKind::kAtomicAdd || k == AccessKind::kAtomicMin; }

using LaneMask = std::uint64_t;

// One warp-level memory instruction. Inactive lanes carry address 0.
struct WarpAccess {
  std::uint32_t sm_id = 0;
  std::uint32_t warp_id = 0;
  AccessKind kind = AccessKind::kLoad;
  std::vector<Address> lane_addresses;
  LaneMask active_mask = 0;
  std::string tag;

  bool lane_active(std::uint32_t lane) const { return (active_mask >> lane) & 1u; }
  int active_lanes() const { return std::popcount(active_mask); }
};

struct MemoryTransaction {
  Address block_address = 0;
  std::uint32_t sm_id = 0;
  std::uint32_t warp_id = 0;
  AccessKind kind = AccessKind::kLoad;
  std::uint32_t lanes = 0;  // active lanes folded into this transaction

  friend bool operator==(const MemoryTransaction&, const MemoryTransaction&) = default;
};

// One transaction per distinct line among active lanes, sorted by address.
std::vector<MemoryTransaction> coalesce_warp_access(const WarpAccess& access, std::uint32_t line_size);

inline Address line_of(Address addr, std::uint32_t line_size) { return addr - addr % line_size; }

}  // namespace irusim
