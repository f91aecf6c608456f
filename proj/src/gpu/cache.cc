#include <algorithm>

#include "irusim/gpu/cache.h"

namespace irusim {

SetAssocCache::SetAssocCache(std::uint64_t size_bytes, std::uint32_t assoc, std::uint32_t line_size)
    : line_size_(line_size), assoc_(assoc) {
  if (assoc == 0 || line_size == 0 || size_bytes % (static_cast<std::uint64_t>(assoc) * line_size) != 0 ||
      size_bytes == 0) {
    throw ConfigError("cache size must be a nonzero multiple of assoc * line_size");
  }
  num_sets_ = static_cast<std::uint32_t>(size_bytes / (static_cast<std::uint64_t>(assoc) * line_size));
  ways_.resize(static_cast<std::size_t>(num_sets_) * assoc_);
}

SetAssocCache::Way* SetAssocCache::find(Address block) {
  Way* set = &ways_[static_cast<std::size_t>(set_of(block)) * assoc_];
  for (std::uint32_t w = 0; w < assoc_; ++w) {
    if (set[w].valid && set[w].tag == block) return &set[w];
  }
  return nullptr;
}

const SetAssocCache::Way* SetAssocCache::find(Address block) const {
  return const_cast<SetAssocCache*>(this)->find(block);
}

bool SetAssocCache::contains(Address block) const { return find(block) != nullptr; }

CacheLookup SetAssocCache::access(Address block, Cycle now, bool mark_dirty) {
  ++counters_.accesses;
  ++use_clock_;
  if (Way* w = find(block)) {
    w->last_use = use_clock_;
    w->dirty = w->dirty || mark_dirty;
    return {true, std::max(now, w->ready), std::nullopt};
  }
  ++counters_.misses;
  Way* set = &ways_[static_cast<std::size_t>(set_of(block)) * assoc_];
  Way* victim = &set[0];
  for (std::uint32_t w = 0; w < assoc_; ++w) {
    if (!set[w].valid) {
      victim = &set[w];
      break;
    }
    if (set[w].last_use < victim->last_use) victim = &set[w];
  }
  CacheLookup out{false, kNeverCycle, std::nullopt};
  if (victim->valid && victim->dirty) out.dirty_victim = victim->tag;
  *victim = Way{block, true, mark_dirty, use_clock_, kNeverCycle};
  return out;
}

bool SetAssocCache::probe_write(Address block) {
  ++counters_.accesses;
  ++use_clock_;
  if (Way* w = find(block)) {
    w->last_use = use_clock_;
    return true;
  }
  ++counters_.misses;
  return false;
}

void SetAssocCache::fill_ready(Address block, Cycle ready) {
  if (Way* w = find(block)) w->ready = ready;
}

}  // namespace irusim
