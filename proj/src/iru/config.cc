#include "irusim/iru/config.h"

namespace irusim {

const char* to_string(FilterOp op) {
  switch (op) {
    case FilterOp::kNone: return "none";
    case FilterOp::kCompareMin: return "compare_min";
    case FilterOp::kFloatAdd: return "float_add";
  }
  return "unknown";
}

const char* to_string(HashFn fn) {
  switch (fn) {
    case HashFn::kDispersion: return "dispersion";
    case HashFn::kIdentityMod: return "identity_mod";
  }
  return "unknown";
}

void IruConfig::validate(std::uint32_t warp_size) const {
  if (partitions < 1 || num_sets_global < 1 || banks_per_partition < 1 || max_inflight_prefetch < 1 ||
      request_buffer_entries < 1 || classifier_queue_entries < 1 || ring_link_entries < 2) {
    throw ConfigError("iru counts must be >= 1 (ring links need at least 2 entries)");
  }
  if (num_sets_global % partitions != 0) throw ConfigError("num_sets_global must be divisible by partitions");
  if (elems_per_entry != warp_size) throw ConfigError("elems_per_entry must equal warp_size");
  if (num_elements >= kMaxIndexDomain) throw ConfigError("num_elements must be below 2^24 (24-bit indices)");
  if (target_elem_width < 1) throw ConfigError("target_elem_width must be >= 1");
  if (hash_fn == HashFn::kDispersion && dispersion_multiplier % 2 == 0) {
    throw ConfigError("dispersion multiplier must be odd");
  }
  if (filter_op == FilterOp::kFloatAdd && !secondary_base) {
    throw ConfigError("filter_op float_add requires a secondary array");
  }
}

}  // namespace irusim
