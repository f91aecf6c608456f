#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "irusim/types.h"

namespace irusim {

enum class FilterOp : std::uint8_t { kNone, kCompareMin, kFloatAdd };
enum class HashFn : std::uint8_t { kDispersion, kIdentityMod };

const char* to_string(FilterOp op);
const char* to_string(HashFn fn);

// Host-side configuration of one IRU pass (configure_iru).
struct IruConfig {
  Address target_base = 0;
  std::uint32_t target_elem_width = 4;
  Address indices_base = 0;
  std::uint64_t num_elements = 0;
  std::optional<Address> secondary_base;
  bool return_positions = false;
  FilterOp filter_op = FilterOp::kNone;

  std::uint32_t num_sets_global = 1024;
  std::uint32_t elems_per_entry = 32;
  std::uint32_t partitions = 4;
  std::uint32_t banks_per_partition = 2;
  std::uint32_t max_inflight_prefetch = 8;
  Cycle timeout_cycles = 1000;  // kNeverCycle disables the timeout
  HashFn hash_fn = HashFn::kDispersion;
  std::uint64_t dispersion_multiplier = 0x9E3779B1ull;  // odd
  bool bypass_l2 = false;

  // Buffer capacities in entries, derived from per-partition storage budgets:
  // 2 KB request buffer at 16 B/request, 1.2 KB classifier buffer and 2.8 KB
  // ring buffer at 10 B/element (24-bit index, 32-bit attribute, 24-bit position).
  std::uint32_t request_buffer_entries = 128;
  std::uint32_t classifier_queue_entries = 40;
  std::uint32_t ring_link_entries = 70;

  bool enabled() const { return num_elements > 0; }
  std::uint32_t sets_per_partition() const { return num_sets_global / partitions; }
  // Structural checks that do not need the address map.
  void validate(std::uint32_t warp_size) const;
};

// Contents of the arrays an IRU pass reads. The simulator has no data image of
// memory, so the values behind indices_base/secondary_base are supplied here.
struct IruInput {
  std::span<const std::uint32_t> indices;
  std::span<const std::uint32_t> secondary;  // empty when no secondary array
};

}  // namespace irusim
