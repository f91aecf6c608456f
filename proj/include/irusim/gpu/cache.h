#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "irusim/types.h"

namespace irusim {

struct CacheCounters {
  std::uint64_t accesses = 0;
  std::uint64_t misses = 0;

  CacheCounters& operator+=(const CacheCounters& o) {
    accesses += o.accesses;
    misses += o.misses;
    return *this;
  }
  friend bool operator==(const CacheCounters&, const CacheCounters&) = default;
};

struct CacheLookup {
  bool hit = false;
  // Cycle at which the line's data is present; later than the lookup when the
  // line was allocated by a still-outstanding miss.
  Cycle ready = 0;
  // Set on a miss that replaced a dirty line.
  std::optional<Address> dirty_victim;
};

// Set-associative, non-sectored, true-LRU tag array. Misses allocate the
// line immediately with a pending ready time (fill_ready).
class SetAssocCache {
 public:
  SetAssocCache(std::uint64_t size_bytes, std::uint32_t assoc, std::uint32_t line_size);

  // Read or read-modify-write access. A miss allocates and evicts LRU.
  CacheLookup access(Address block, Cycle now, bool mark_dirty = false);
  // Write-through/no-allocate probe: updates recency on a hit, no allocation.
  bool probe_write(Address block);
  // Records when an allocated line's data arrives.
  void fill_ready(Address block, Cycle ready);
  bool contains(Address block) const;

  std::uint32_t num_sets() const { return num_sets_; }
  std::uint32_t assoc() const { return assoc_; }
  std::uint32_t set_of(Address block) const { return static_cast<std::uint32_t>((block / line_size_) % num_sets_); }
  const CacheCounters& counters() const { return counters_; }

 private:
  struct Way {
    Address tag = 0;
    bool valid = false;
    bool dirty = false;
    std::uint64_t last_use = 0;
    Cycle ready = 0;
  };
  Way* find(Address block);
  const Way* find(Address block) const;

  std::uint32_t line_size_;
  std::uint32_t assoc_;
  std::uint32_t num_sets_;
  std::vector<Way> ways_;
  std::uint64_t use_clock_ = 0;
  CacheCounters counters_;
};

}  // namespace irusim
