#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <vector>

#include "irusim/iru/config.h"
#include "irusim/types.h"

namespace irusim {

struct IruElement {
  std::uint32_t index = 0;  // 24 bits used
  std::optional<std::uint32_t> attribute;
  std::uint32_t original_position = 0;
  bool valid = true;

  friend bool operator==(const IruElement&, const IruElement&) = default;
};

struct HashPlacement {
  std::uint64_t block = 0;  // target line number the element will touch
  std::uint32_t set_id = 0;
  std::uint32_t owner_partition = 0;
};

// Maps an element to its set of the global logical hash. Equal blocks always
// share a set, which is what collocates same-line indices.
HashPlacement hash_block_set(std::uint32_t index, const IruConfig& cfg, std::uint32_t line_size);

struct ClassifyResult {
  bool local = false;
  std::uint32_t bank = 0;         // valid when local
  std::uint32_t destination = 0;  // owner partition
};

ClassifyResult classify_element(std::uint32_t partition, const HashPlacement& placement, const IruConfig& cfg);

enum class InsertOutcome : std::uint8_t { kNewSlot, kAppended, kCollocated, kFilterMerged, kSealedReplay };

struct HashSlot {
  IruElement element;
  std::uint64_t block = 0;
  bool conflict = false;  // block differs from the entry tag
};

struct HashEntry {
  std::uint32_t set_id = 0;
  std::uint64_t tag = 0;  // block of the first inserted element
  std::vector<HashSlot> slots;
  std::uint64_t generation = 0;
  std::uint64_t seal_seq = 0;

  std::uint32_t fill_count() const { return static_cast<std::uint32_t>(slots.size()); }
  std::uint32_t conflict_count() const;
};

// An element leaving the hash toward a reply, with the tag of the entry it sat in.
struct GatheredElement {
  IruElement element;
  std::uint64_t block = 0;
  std::uint64_t entry_tag = 0;
};

struct HashCounters {
  std::uint64_t inserted = 0;
  std::uint64_t collocated_conflicts = 0;
  std::uint64_t filter_merged = 0;
  std::uint64_t sealed_replays = 0;
  std::uint64_t max_resident = 0;
};

// One memory partition's slice of the direct-mapped reordering hash. Each set
// holds one open entry of up to elems_per_entry elements; a full entry is
// sealed, handed to the reply stage, and the set reopens on its next insertion.
class ReorderingHash {
 public:
  ReorderingHash(std::uint32_t first_set_id, std::uint32_t num_sets, std::uint32_t elems_per_entry,
                 FilterOp filter_op);

  InsertOutcome insert(const IruElement& e, const HashPlacement& placement);

  bool has_sealed() const { return !sealed_.empty(); }
  // Oldest sealed entry, evicted.
  HashEntry take_sealed();
  // Greedy best-coalesced selection: entries by descending fill, the last one
  // taken only as far as needed to fill the warp.
  std::vector<GatheredElement> gather(std::uint32_t want);

  std::uint64_t resident() const { return resident_; }
  bool empty() const { return resident_ == 0; }
  const HashEntry& open_entry(std::uint32_t set_id) const { return sets_.at(set_id - first_set_id_); }
  std::vector<std::uint32_t> fills() const;  // nonzero fills, sealed then open
  const HashCounters& counters() const { return counters_; }

 private:
  void append(HashEntry& entry, const IruElement& e, const HashPlacement& placement);
  void seal(std::uint32_t local);
  void release_seal(const HashEntry& e);

  std::uint32_t first_set_id_;
  std::uint32_t elems_per_entry_;
  FilterOp filter_op_;
  std::vector<HashEntry> sets_;
  std::vector<bool> sealed_pending_;
  std::deque<HashEntry> sealed_;
  std::uint64_t next_seal_seq_ = 1;
  std::uint64_t resident_ = 0;
  HashCounters counters_;
};

}  // namespace irusim
