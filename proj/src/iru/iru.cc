#include <algorithm>
#include <bit>

#include "irusim/iru/iru.h"

namespace irusim {

std::uint32_t IruReply::enabled_lanes() const { return static_cast<std::uint32_t>(std::popcount(enabled_mask)); }

IruPartitionCounters& IruPartitionCounters::operator+=(const IruPartitionCounters& o) {
  prefetch_lines += o.prefetch_lines;
  elements_prefetched += o.elements_prefetched;
  inserted += o.inserted;
  collocated_conflicts += o.collocated_conflicts;
  filter_merged += o.filter_merged;
  sealed_replays += o.sealed_replays;
  replies_instant += o.replies_instant;
  replies_timeout += o.replies_timeout;
  replies_drain += o.replies_drain;
  replies_empty += o.replies_empty;
  elements_delivered += o.elements_delivered;
  ring_messages += o.ring_messages;
  requests += o.requests;
  request_stalls += o.request_stalls;
  return *this;
}

IruUnit::IruUnit(std::uint32_t warp_size, std::uint32_t line_size, Cycle pipeline_latency)
    : warp_size_(warp_size), line_size_(line_size), pipeline_latency_(pipeline_latency) {}

void IruUnit::disable() {
  configured_ = false;
  cfg_ = IruConfig{};
  parts_.clear();
  ring_.reset();
}

void IruUnit::configure(const IruConfig& cfg, IruInput input, IruMemoryPort& memory) {
  if (!pending_.empty() || !arrivals_.empty()) throw SimulationError("configure_iru while requests are pending");
  cfg.validate(warp_size_);
  if (cfg.enabled()) {
    if (input.indices.size() < cfg.num_elements) throw ConfigError("iru input shorter than num_elements");
    if (cfg.secondary_base && input.secondary.size() < cfg.num_elements) {
      throw ConfigError("iru secondary input shorter than num_elements");
    }
    if (cfg.indices_base % line_size_ != 0) throw ConfigError("indices_base must be line-aligned");
    if (cfg.secondary_base && *cfg.secondary_base % line_size_ != 0) {
      throw ConfigError("secondary_base must be line-aligned");
    }
    const std::uint64_t bytes = cfg.num_elements * 4;
    auto overlaps = [](Address a, std::uint64_t alen, Address b, std::uint64_t blen) {
      return a < b + blen && b < a + alen;
    };
    if (cfg.secondary_base && overlaps(cfg.indices_base, bytes, *cfg.secondary_base, bytes)) {
      throw ConfigError("iru index and secondary arrays overlap");
    }
  }

  cfg_ = cfg;
  input_ = input;
  memory_ = &memory;
  configured_ = true;
  exhausted_at_ = kNeverCycle;
  if (counters_.size() != cfg.partitions) counters_.assign(cfg.partitions, {});
  if (sm_rr_.empty()) sm_rr_.assign(1, 0);

  parts_.clear();
  const std::uint32_t sets = cfg.sets_per_partition();
  for (std::uint32_t p = 0; p < cfg.partitions; ++p) {
    parts_.emplace_back(ReorderingHash(p * sets, sets, cfg.elems_per_entry, cfg.filter_op));
    parts_.back().banks.resize(cfg.banks_per_partition);
    parts_.back().bank_busy.assign(cfg.banks_per_partition, kNeverCycle);
  }
  ring_ = std::make_unique<Ring>(cfg.partitions, cfg.ring_link_entries);

  if (!cfg.enabled()) return;
  const std::uint64_t first_line = cfg.indices_base / line_size_;
  const std::uint64_t last_line = (cfg.indices_base + cfg.num_elements * 4 - 1) / line_size_;
  for (std::uint64_t line = first_line; line <= last_line; ++line) {
    const std::uint32_t owner = memory.partition_of(line * line_size_);
    if (owner >= cfg.partitions) throw ConfigError("iru partitions must match memory partitions");
    if (cfg.secondary_base) {
      const Address sec = *cfg.secondary_base + (line - first_line) * line_size_;
      if (memory.partition_of(sec) != owner) {
        throw ConfigError("secondary array must be partition-aligned with the index array");
      }
    }
    parts_[owner].owned_lines.push_back(line);
  }
}

std::optional<std::uint32_t> IruUnit::reserve_request_slot(std::uint32_t sm) {
  if (!active()) throw SimulationError("load_iru called with IRU unconfigured");
  if (sm >= sm_rr_.size()) sm_rr_.resize(sm + 1, 0);
  const std::uint32_t p = sm_rr_[sm] % cfg_.partitions;
  if (parts_[p].occupancy >= cfg_.request_buffer_entries) {
    ++counters_[p].request_stalls;
    return std::nullopt;
  }
  ++parts_[p].occupancy;
  sm_rr_[sm] = (p + 1) % cfg_.partitions;
  return p;
}

void IruUnit::enqueue_request(std::uint32_t sm, std::uint32_t warp, std::uint32_t partition, Cycle arrival) {
  IruRequest r{sm, warp, arrival, partition, next_seq_++};
  // Keep arrivals sorted; requests are normally enqueued in nondecreasing order.
  auto it = std::upper_bound(arrivals_.begin(), arrivals_.end(), r, [](const IruRequest& a, const IruRequest& b) {
    return a.arrival_cycle < b.arrival_cycle;
  });
  arrivals_.insert(it, r);
  ++counters_[partition].requests;
}

IruElement IruUnit::element_at(std::uint64_t i) const {
  IruElement e;
  e.index = input_.indices[i];
  if (e.index >= kMaxIndexDomain) {
    throw SimulationError("iru index " + std::to_string(e.index) + " exceeds 24 bits at position " +
                          std::to_string(i));
  }
  if (cfg_.secondary_base) e.attribute = input_.secondary[i];
  e.original_position = static_cast<std::uint32_t>(i);
  return e;
}

void IruUnit::prefetch_step(std::uint32_t p, Cycle now) {
  Partition& part = parts_[p];
  // Completions are unpacked strictly in issue order so elements keep array order.
  while (!part.fetches.empty() && part.fetches.front().ready <= now) {
    const Fetch f = part.fetches.front();
    part.fetches.pop_front();
    for (std::uint32_t k = 0; k < f.count; ++k) part.input.push_back(element_at(f.first + k));
    counters_[p].elements_prefetched += f.count;
  }
  const std::uint64_t per_line = line_size_ / 4;
  const std::uint64_t budget = static_cast<std::uint64_t>(cfg_.max_inflight_prefetch) * per_line;
  const std::uint64_t first_line = cfg_.indices_base / line_size_;
  while (part.next_line < part.owned_lines.size() && part.fetches.size() < cfg_.max_inflight_prefetch) {
    const std::uint64_t line = part.owned_lines[part.next_line];
    const std::uint64_t first = (line - first_line) * per_line;
    const auto count = static_cast<std::uint32_t>(std::min(per_line, cfg_.num_elements - first));
    std::uint64_t buffered = part.input.size();
    for (const Fetch& f : part.fetches) buffered += f.count;
    if (buffered + count > budget) break;
    Cycle ready = memory_->fetch_line(p, line * line_size_, cfg_.bypass_l2, now);
    ++counters_[p].prefetch_lines;
    if (cfg_.secondary_base) {
      const Address sec = *cfg_.secondary_base + (line - first_line) * line_size_;
      ready = std::max(ready, memory_->fetch_line(p, sec, cfg_.bypass_l2, now));
      ++counters_[p].prefetch_lines;
    }
    part.fetches.push_back({first, count, std::max(ready, now + 1)});
    ++part.next_line;
  }
}

void IruUnit::classify_step(std::uint32_t p, Cycle now) {
  Partition& part = parts_[p];
  std::vector<bool> used(cfg_.banks_per_partition + 1, false);  // last slot: forward queue
  while (!part.input.empty()) {
    const IruElement& e = part.input.front();
    const HashPlacement pl = hash_block_set(e.index, cfg_, line_size_);
    const ClassifyResult c = classify_element(p, pl, cfg_);
    const std::size_t q = c.local ? c.bank : cfg_.banks_per_partition;
    std::deque<Pending>& queue = c.local ? part.banks[c.bank] : part.forward;
    if (used[q] || queue.size() >= cfg_.classifier_queue_entries) break;
    used[q] = true;
    queue.push_back({e, pl});
    part.input.pop_front();
  }
  (void)now;
}

void IruUnit::insert(std::uint32_t p, const Pending& e) {
  IruPartitionCounters& c = counters_[p];
  ++c.inserted;
  switch (parts_[p].hash.insert(e.element, e.placement)) {
    case InsertOutcome::kFilterMerged: ++c.filter_merged; break;
    case InsertOutcome::kCollocated: ++c.collocated_conflicts; break;
    case InsertOutcome::kSealedReplay: ++c.sealed_replays; break;
    default: break;
  }
}

bool IruUnit::all_hash_empty() const {
  return std::all_of(parts_.begin(), parts_.end(), [](const Partition& p) { return p.hash.empty(); });
}

bool IruUnit::prefetch_finished() const {
  for (const Partition& part : parts_) {
    if (part.next_line < part.owned_lines.size() || !part.fetches.empty() || !part.input.empty()) return false;
  }
  return true;
}

bool IruUnit::input_exhausted() const {
  if (!configured_) return true;
  for (const Partition& part : parts_) {
    if (part.next_line < part.owned_lines.size() || !part.fetches.empty() || !part.input.empty() ||
        !part.forward.empty()) {
      return false;
    }
    for (const auto& b : part.banks) {
      if (!b.empty()) return false;
    }
  }
  return !ring_ || ring_->empty();
}

std::uint64_t IruUnit::resident_elements() const {
  std::uint64_t n = 0;
  for (const Partition& part : parts_) n += part.hash.resident();
  return n;
}

IruReply IruUnit::make_reply(const IruRequest& r, std::uint32_t p, ReplyKind kind,
                             const std::vector<GatheredElement>& elems, Cycle now) {
  IruReply out;
  out.sm_id = r.sm_id;
  out.warp_id = r.warp_id;
  out.partition = p;
  out.kind = kind;
  out.arrival_cycle = r.arrival_cycle;
  out.reply_cycle = now + pipeline_latency_;
  out.elements.assign(warp_size_, IruElement{0, std::nullopt, 0, false});
  for (std::size_t i = 0; i < elems.size(); ++i) {
    out.elements[i] = elems[i].element;
    out.elements[i].valid = true;
    out.entry_tags.push_back(elems[i].entry_tag);
    out.blocks.push_back(elems[i].block);
    out.enabled_mask |= std::uint64_t{1} << i;
  }
  // An all-disabled reply carries no data: one header-only message.
  out.reply_count = !elems.empty() && (cfg_.secondary_base || cfg_.return_positions) ? 2 : 1;
  IruPartitionCounters& c = counters_[p];
  c.elements_delivered += elems.size();
  switch (kind) {
    case ReplyKind::kInstant: ++c.replies_instant; break;
    case ReplyKind::kTimeout: ++c.replies_timeout; break;
    case ReplyKind::kDrain: ++c.replies_drain; break;
    case ReplyKind::kEmpty: ++c.replies_empty; break;
  }
  return out;
}

bool IruUnit::reply_step(std::uint32_t p, Cycle now, std::vector<IruReply>& out) {
  if (pending_.empty()) return false;
  Partition& part = parts_[p];
  const IruRequest& r = pending_.front();
  std::optional<ReplyKind> kind;
  std::vector<GatheredElement> elems;

  if (part.hash.has_sealed()) {
    HashEntry e = part.hash.take_sealed();
    for (const HashSlot& s : e.slots) elems.push_back({s.element, s.block, e.tag});
    kind = ReplyKind::kInstant;
  } else if (exhausted_at_ != kNeverCycle) {
    if (!part.hash.empty()) {
      elems = part.hash.gather(warp_size_);
      kind = ReplyKind::kDrain;
    } else if (all_hash_empty()) {
      kind = ReplyKind::kEmpty;
    }
  } else if (cfg_.timeout_cycles != kNeverCycle && now - r.arrival_cycle >= cfg_.timeout_cycles) {
    // Partial replies only once every prefetcher has finished; before that
    // more data for this partition may still be fetched elsewhere.
    if (part.hash.resident() >= warp_size_ || (prefetch_finished() && !part.hash.empty())) {
      elems = part.hash.gather(warp_size_);
      kind = ReplyKind::kTimeout;
    }
  }
  if (!kind) return false;

  IruReply reply = make_reply(r, p, *kind, elems, now);
  --parts_[r.target_partition].occupancy;
  RequestRecord rec;
  rec.request = r;
  rec.reply_cycle = reply.reply_cycle;
  rec.kind = *kind;
  if (r.seq >= records_base_seq_ && r.seq - records_base_seq_ < backlog_.size()) {
    rec.backlog_at_arrival = backlog_[r.seq - records_base_seq_];
  }
  records_.push_back(rec);
  pending_.pop_front();
  out.push_back(std::move(reply));
  return true;
}

std::vector<IruReply> IruUnit::tick(Cycle now) {
  std::vector<IruReply> out;
  if (!configured_) return out;

  while (!arrivals_.empty() && arrivals_.front().arrival_cycle <= now) {
    const IruRequest r = arrivals_.front();
    arrivals_.pop_front();
    if (backlog_.empty()) records_base_seq_ = r.seq;
    if (r.seq >= records_base_seq_) {
      if (backlog_.size() <= r.seq - records_base_seq_) backlog_.resize(r.seq - records_base_seq_ + 1, 0);
      backlog_[r.seq - records_base_seq_] = pending_.size();
    }
    pending_.push_back(r);
  }
  if (!cfg_.enabled()) {
    // Nothing will ever be inserted: every request gets an empty reply.
    exhausted_at_ = std::min(exhausted_at_, now);
    for (std::uint32_t p = 0; p < cfg_.partitions; ++p) reply_step(p, now, out);
    return out;
  }

  for (std::uint32_t p = 0; p < cfg_.partitions; ++p) prefetch_step(p, now);

  // Ring arrivals go first and take their bank's insert slot for this cycle.
  ring_->step(now, [&](std::uint32_t p, const RingMessage& m) {
    const std::uint32_t bank = m.placement.set_id % cfg_.banks_per_partition;
    if (parts_[p].bank_busy[bank] == now) return false;
    parts_[p].bank_busy[bank] = now;
    insert(p, {m.element, m.placement});
    return true;
  });
  for (std::uint32_t p = 0; p < cfg_.partitions; ++p) {
    Partition& part = parts_[p];
    for (std::uint32_t b = 0; b < cfg_.banks_per_partition; ++b) {
      if (part.banks[b].empty() || part.bank_busy[b] == now) continue;
      part.bank_busy[b] = now;
      insert(p, part.banks[b].front());
      part.banks[b].pop_front();
    }
    if (!part.forward.empty() && ring_->can_inject(p, now)) {
      const Pending& f = part.forward.front();
      ring_->inject(p, RingMessage{f.element, f.placement, f.placement.owner_partition, 0}, now);
      ++counters_[p].ring_messages;
      part.forward.pop_front();
    }
    classify_step(p, now);
  }

  if (exhausted_at_ == kNeverCycle && input_exhausted()) exhausted_at_ = now;
  for (std::uint32_t p = 0; p < cfg_.partitions; ++p) reply_step(p, now, out);
  if (pending_.empty() && arrivals_.empty()) {
    backlog_.clear();
  }
  return out;
}

bool IruUnit::busy() const {
  if (!configured_) return false;
  return !pending_.empty() || !arrivals_.empty() || !input_exhausted();
}

Cycle IruUnit::next_event(Cycle now) const {
  if (!configured_) return kNeverCycle;
  // Cheap conservative answer: while data moves inside the unit, every cycle matters.
  Cycle next = kNeverCycle;
  if (!arrivals_.empty()) next = std::max(now + 1, arrivals_.front().arrival_cycle);
  bool moving = ring_ && !ring_->empty();
  for (const Partition& part : parts_) {
    if (!part.input.empty() || !part.forward.empty()) moving = true;
    for (const auto& b : part.banks) moving = moving || !b.empty();
    if (!part.fetches.empty()) next = std::min(next, std::max(now + 1, part.fetches.front().ready));
    if (part.next_line < part.owned_lines.size() && part.fetches.size() < cfg_.max_inflight_prefetch) {
      moving = true;
    }
    if (!pending_.empty() && part.hash.has_sealed()) moving = true;
  }
  if (moving) return now + 1;
  if (!pending_.empty()) {
    if (exhausted_at_ != kNeverCycle || !cfg_.enabled()) return now + 1;
    if (cfg_.timeout_cycles != kNeverCycle) {
      const Cycle due = pending_.front().arrival_cycle + cfg_.timeout_cycles;
      if (due > now) next = std::min(next, due);
    }
  }
  return next;
}

std::vector<IruReply> IruUnit::drain_finalize() {
  std::vector<IruReply> out;
  if (!configured_) return out;
  if (!input_exhausted()) throw SimulationError("drain_finalize before input is exhausted");
  const IruRequest none{~0u, ~0u, 0, 0, 0};
  for (std::uint32_t p = 0; p < cfg_.partitions; ++p) {
    while (!parts_[p].hash.empty()) {
      out.push_back(make_reply(none, p, ReplyKind::kDrain, parts_[p].hash.gather(warp_size_), 0));
    }
  }
  return out;
}

std::uint64_t IruUnit::max_reply_latency() const {
  std::uint64_t m = 0;
  for (const auto& r : records_) m = std::max<std::uint64_t>(m, r.reply_cycle - r.request.arrival_cycle);
  return m;
}

}  // namespace irusim
