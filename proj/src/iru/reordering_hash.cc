#include <algorithm>
#include <bit>
#include <numeric>

#include "irusim/iru/reordering_hash.h"

namespace irusim {
namespace {

float as_float(std::uint32_t bits) { return std::bit_cast<float>(bits); }
std::uint32_t as_bits(float f) { return std::bit_cast<std::uint32_t>(f); }

}  // namespace

HashPlacement hash_block_set(std::uint32_t index, const IruConfig& cfg, std::uint32_t line_size) {
  HashPlacement out;
  out.block = (cfg.target_base + static_cast<std::uint64_t>(index) * cfg.target_elem_width) / line_size;
  if (cfg.hash_fn == HashFn::kDispersion) {
    out.set_id = static_cast<std::uint32_t>((out.block * cfg.dispersion_multiplier) % cfg.num_sets_global);
  } else {
    out.set_id = static_cast<std::uint32_t>(out.block % cfg.num_sets_global);
  }
  out.owner_partition = out.set_id / cfg.sets_per_partition();
  return out;
}

ClassifyResult classify_element(std::uint32_t partition, const HashPlacement& placement, const IruConfig& cfg) {
  ClassifyResult out;
  out.destination = placement.owner_partition;
  out.local = placement.owner_partition == partition;
  out.bank = placement.set_id % cfg.banks_per_partition;
  return out;
}

std::uint32_t HashEntry::conflict_count() const {
  return static_cast<std::uint32_t>(
      std::count_if(slots.begin(), slots.end(), [](const HashSlot& s) { return s.conflict; }));
}

ReorderingHash::ReorderingHash(std::uint32_t first_set_id, std::uint32_t num_sets, std::uint32_t elems_per_entry,
                               FilterOp filter_op)
    : first_set_id_(first_set_id),
      elems_per_entry_(elems_per_entry),
      filter_op_(filter_op),
      sets_(num_sets),
      sealed_pending_(num_sets, false) {
  for (std::uint32_t i = 0; i < num_sets; ++i) sets_[i].set_id = first_set_id + i;
}

void ReorderingHash::append(HashEntry& entry, const IruElement& e, const HashPlacement& placement) {
  if (entry.slots.empty()) entry.tag = placement.block;
  const bool conflict = placement.block != entry.tag;
  if (conflict) ++counters_.collocated_conflicts;
  entry.slots.push_back({e, placement.block, conflict});
  ++resident_;
  counters_.max_resident = std::max(counters_.max_resident, resident_);
}

void ReorderingHash::seal(std::uint32_t local) {
  HashEntry& entry = sets_[local];
  entry.seal_seq = next_seal_seq_++;
  sealed_.push_back(entry);
  sealed_pending_[local] = true;
  const std::uint32_t set_id = entry.set_id;
  const std::uint64_t generation = entry.generation + 1;
  entry = HashEntry{};
  entry.set_id = set_id;
  entry.generation = generation;
}

InsertOutcome ReorderingHash::insert(const IruElement& e, const HashPlacement& placement) {
  if (placement.set_id < first_set_id_ || placement.set_id >= first_set_id_ + sets_.size()) {
    throw SimulationError("element routed to a partition that does not own set " + std::to_string(placement.set_id));
  }
  const std::uint32_t local = placement.set_id - first_set_id_;
  ++counters_.inserted;
  HashEntry& entry = sets_[local];

  if (filter_op_ != FilterOp::kNone) {
    auto it = std::find_if(entry.slots.begin(), entry.slots.end(),
                           [&](const HashSlot& s) { return s.element.index == e.index; });
    if (it != entry.slots.end()) {
      IruElement& kept = it->element;
      if (filter_op_ == FilterOp::kCompareMin) {
        if (kept.attribute && e.attribute && *e.attribute < *kept.attribute) kept = e;
      } else {
        const float sum = as_float(kept.attribute.value_or(0)) + as_float(e.attribute.value_or(0));
        kept.attribute = as_bits(sum);
      }
      ++counters_.filter_merged;
      return InsertOutcome::kFilterMerged;
    }
  }

  InsertOutcome outcome;
  if (sealed_pending_[local]) {
    // The previous generation of this set is full; reopen it.
    sealed_pending_[local] = false;
    ++counters_.sealed_replays;
    outcome = InsertOutcome::kSealedReplay;
  } else if (entry.slots.empty()) {
    outcome = InsertOutcome::kNewSlot;
  } else {
    outcome = placement.block == entry.tag ? InsertOutcome::kAppended : InsertOutcome::kCollocated;
  }
  append(entry, e, placement);
  if (entry.fill_count() == elems_per_entry_) seal(local);
  return outcome;
}

void ReorderingHash::release_seal(const HashEntry& e) {
  const std::uint32_t local = e.set_id - first_set_id_;
  if (sets_[local].generation == e.generation + 1 && sets_[local].slots.empty()) sealed_pending_[local] = false;
}

HashEntry ReorderingHash::take_sealed() {
  if (sealed_.empty()) throw SimulationError("no sealed entry");
  HashEntry e = std::move(sealed_.front());
  sealed_.pop_front();
  resident_ -= e.fill_count();
  release_seal(e);
  return e;
}

std::vector<std::uint32_t> ReorderingHash::fills() const {
  std::vector<std::uint32_t> out;
  for (const auto& e : sealed_) out.push_back(e.fill_count());
  for (const auto& e : sets_) {
    if (!e.slots.empty()) out.push_back(e.fill_count());
  }
  return out;
}

std::vector<GatheredElement> ReorderingHash::gather(std::uint32_t want) {
  // Candidate i < sealed_.size() is a sealed entry; the rest index open sets.
  struct Candidate {
    std::uint32_t fill;
    bool sealed;
    std::size_t pos;
  };
  std::vector<Candidate> cands;
  for (std::size_t i = 0; i < sealed_.size(); ++i) cands.push_back({sealed_[i].fill_count(), true, i});
  for (std::size_t i = 0; i < sets_.size(); ++i) {
    if (!sets_[i].slots.empty()) cands.push_back({sets_[i].fill_count(), false, i});
  }
  // Descending fill; ties keep sealed-before-open, then seal order / set order.
  std::stable_sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) { return a.fill > b.fill; });

  std::vector<Candidate> whole;
  std::optional<Candidate> split;
  std::uint32_t total = 0;
  for (const Candidate& c : cands) {
    if (total == want) break;
    if (total + c.fill > want) {
      split = c;  // tops the warp up; the rest of it stays resident
      break;
    }
    whole.push_back(c);
    total += c.fill;
  }

  std::vector<GatheredElement> out;
  out.reserve(want);
  auto emit = [&](const HashEntry& entry, std::size_t count) {
    for (std::size_t i = 0; i < count; ++i) {
      out.push_back({entry.slots[i].element, entry.slots[i].block, entry.tag});
    }
  };
  std::vector<std::size_t> sealed_taken;
  for (const Candidate& c : whole) {
    if (c.sealed) {
      emit(sealed_[c.pos], sealed_[c.pos].fill_count());
      sealed_taken.push_back(c.pos);
    } else {
      HashEntry& entry = sets_[c.pos];
      emit(entry, entry.fill_count());
      resident_ -= entry.fill_count();
      entry.slots.clear();
    }
  }
  if (split && total < want) {
    const std::uint32_t take = want - total;
    HashEntry& entry = split->sealed ? sealed_[split->pos] : sets_[split->pos];
    emit(entry, take);
    entry.slots.erase(entry.slots.begin(), entry.slots.begin() + take);
    resident_ -= take;
    // A split sealed entry is no longer full; it keeps its place in the queue.
  }
  std::sort(sealed_taken.rbegin(), sealed_taken.rend());
  for (std::size_t pos : sealed_taken) {
    resident_ -= sealed_[pos].fill_count();
    HashEntry e = std::move(sealed_[pos]);
    sealed_.erase(sealed_.begin() + static_cast<std::ptrdiff_t>(pos));
    release_seal(e);
  }
  return out;
}

}  // namespace irusim
