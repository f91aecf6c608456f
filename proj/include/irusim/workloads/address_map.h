#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "irusim/gpu/config.h"
#include "irusim/gpu/warp_access.h"
#include "irusim/iru/config.h"

namespace irusim {

struct MappedArray {
  std::string name;
  Address base = 0;
  std::uint32_t elem_width = 4;
  std::uint64_t length = 0;

  Address end() const { return base + elem_width * length; }
  Address at(std::uint64_t i) const { return base + elem_width * i; }
};

// Simulated device address space. Arrays are placed back to back at bases
// aligned to line_size * interleave_lines * num_mem_partitions, so element i
// of two arrays with equal widths always lives in the same memory partition.
class AddressMap {
 public:
  explicit AddressMap(const GpuConfig& cfg);

  const MappedArray& add(const std::string& name, std::uint32_t elem_width, std::uint64_t length);
  // Ensures room for `length` elements, moving the array to a fresh range
  // (and dropping the old one) when it is too small.
  const MappedArray& reserve(const std::string& name, std::uint64_t length);
  const MappedArray& operator[](const std::string& name) const;
  bool contains(const std::string& name) const { return index_.count(name) != 0; }
  Address alignment() const { return align_; }

  // Name of the array holding `addr`, or nullptr.
  const MappedArray* find(Address addr) const;
  // Throws SimulationError when an active lane falls outside every array.
  void check(const WarpAccess& a) const;
  // Throws ConfigError for unmapped or overlapping IRU ranges.
  void check_iru(const IruConfig& cfg) const;

  const std::vector<MappedArray>& arrays() const { return arrays_; }

 private:
  Address align_;
  Address next_ = 0;
  std::vector<MappedArray> arrays_;  // ascending base
  std::map<std::string, std::size_t> index_;
};

}  // namespace irusim
