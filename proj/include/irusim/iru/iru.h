#pragma once

#include <cstdint>
#include <deque>
#include <memory>
#include <optional>
#include <vector>

#include "irusim/iru/config.h"
#include "irusim/iru/reordering_hash.h"
#include "irusim/iru/ring.h"

namespace irusim {

// Memory-side services the IRU needs from the partition it sits in.
class IruMemoryPort {
 public:
  virtual ~IruMemoryPort() = default;
  virtual std::uint32_t partition_of(Address block) const = 0;
  // Returns the cycle the line's data is available inside the partition.
  virtual Cycle fetch_line(std::uint32_t partition, Address block, bool bypass_l2, Cycle now) = 0;
};

struct IruRequest {
  std::uint32_t sm_id = 0;
  std::uint32_t warp_id = 0;
  Cycle arrival_cycle = 0;
  std::uint32_t target_partition = 0;
  std::uint64_t seq = 0;
};

enum class ReplyKind : std::uint8_t { kInstant, kTimeout, kDrain, kEmpty };

struct IruReply {
  std::uint32_t sm_id = 0;
  std::uint32_t warp_id = 0;
  std::uint32_t partition = 0;  // partition that replied
  ReplyKind kind = ReplyKind::kInstant;
  std::vector<IruElement> elements;  // warp_size lanes; enabled lanes form a prefix
  std::vector<std::uint64_t> entry_tags;  // per enabled lane: tag of the entry it came from
  std::vector<std::uint64_t> blocks;      // per enabled lane: its own target block
  std::uint64_t enabled_mask = 0;
  std::uint32_t reply_count = 1;
  Cycle arrival_cycle = 0;
  Cycle reply_cycle = 0;

  std::uint32_t enabled_lanes() const;
};

struct IruPartitionCounters {
  std::uint64_t prefetch_lines = 0;
  std::uint64_t elements_prefetched = 0;
  std::uint64_t inserted = 0;
  std::uint64_t collocated_conflicts = 0;
  std::uint64_t filter_merged = 0;
  std::uint64_t sealed_replays = 0;
  std::uint64_t replies_instant = 0;
  std::uint64_t replies_timeout = 0;
  std::uint64_t replies_drain = 0;
  std::uint64_t replies_empty = 0;
  std::uint64_t elements_delivered = 0;
  std::uint64_t ring_messages = 0;
  std::uint64_t requests = 0;
  std::uint64_t request_stalls = 0;

  IruPartitionCounters& operator+=(const IruPartitionCounters& o);
  friend bool operator==(const IruPartitionCounters&, const IruPartitionCounters&) = default;
};

// Per-request service record, kept for progress checks.
struct RequestRecord {
  IruRequest request;
  Cycle reply_cycle = 0;
  std::uint64_t backlog_at_arrival = 0;  // requests pending when it arrived
  ReplyKind kind = ReplyKind::kInstant;
};

// All IRU partitions of the GPU, sharing one logical reordering hash.
class IruUnit {
 public:
  IruUnit(std::uint32_t warp_size, std::uint32_t line_size, Cycle pipeline_latency);

  // configure_iru: resets all partitions for a new pass over `input`.
  void configure(const IruConfig& cfg, IruInput input, IruMemoryPort& memory);
  void disable();
  bool configured() const { return configured_; }
  bool active() const { return configured_ && cfg_.enabled(); }
  const IruConfig& config() const { return cfg_; }

  // SM side: picks the round-robin destination and takes a request-buffer
  // credit. nullopt means the buffer is full and the SM must retry.
  std::optional<std::uint32_t> reserve_request_slot(std::uint32_t sm);
  // Request reaches partition `partition` at `arrival`.
  void enqueue_request(std::uint32_t sm, std::uint32_t warp, std::uint32_t partition, Cycle arrival);

  // Advances every partition by one cycle; returns replies leaving this cycle.
  std::vector<IruReply> tick(Cycle now);
  // True when ticking can change state (data in flight or requests pending).
  bool busy() const;
  // Earliest cycle after `now` at which ticking can change state.
  Cycle next_event(Cycle now) const;

  bool input_exhausted() const;
  // All index lines fetched and unpacked; elements may still be in transit.
  bool prefetch_finished() const;
  Cycle exhausted_at() const { return exhausted_at_; }
  std::uint64_t pending_requests() const { return pending_.size() + arrivals_.size(); }
  std::uint64_t resident_elements() const;

  // Remaining entries merged greedily into warp-size replies (no requester).
  std::vector<IruReply> drain_finalize();

  const std::vector<IruPartitionCounters>& counters() const { return counters_; }
  const std::vector<RequestRecord>& request_records() const { return records_; }
  void clear_records() { records_.clear(); }
  std::uint64_t max_reply_latency() const;

  // Exposed for unit tests of the individual stages.
  const ReorderingHash& hash(std::uint32_t p) const { return parts_[p].hash; }
  std::size_t input_queue_size(std::uint32_t p) const { return parts_[p].input.size(); }
  std::size_t inflight_prefetches(std::uint32_t p) const { return parts_[p].fetches.size(); }
  std::size_t ring_in_flight() const { return ring_ ? ring_->in_flight() : 0; }

 private:
  struct Pending {
    IruElement element;
    HashPlacement placement;
  };
  struct Fetch {
    std::uint64_t first = 0;
    std::uint32_t count = 0;
    Cycle ready = 0;
  };
  struct Partition {
    explicit Partition(ReorderingHash h) : hash(std::move(h)) {}
    std::vector<std::uint64_t> owned_lines;  // index-array line numbers, ascending
    std::size_t next_line = 0;
    std::deque<Fetch> fetches;
    std::uint64_t reserved = 0;  // prefetch buffer elements in flight or queued
    std::deque<IruElement> input;
    std::vector<std::deque<Pending>> banks;
    std::deque<Pending> forward;
    std::vector<Cycle> bank_busy;  // last cycle each bank inserted
    ReorderingHash hash;
    std::uint32_t occupancy = 0;   // request-buffer credits in use
  };

  void prefetch_step(std::uint32_t p, Cycle now);
  void classify_step(std::uint32_t p, Cycle now);
  void insert(std::uint32_t p, const Pending& e);
  bool reply_step(std::uint32_t p, Cycle now, std::vector<IruReply>& out);
  IruReply make_reply(const IruRequest& r, std::uint32_t p, ReplyKind kind, const std::vector<GatheredElement>& elems,
                      Cycle now);
  IruElement element_at(std::uint64_t i) const;
  bool all_hash_empty() const;

  std::uint32_t warp_size_;
  std::uint32_t line_size_;
  Cycle pipeline_latency_;
  IruConfig cfg_;
  IruInput input_;
  IruMemoryPort* memory_ = nullptr;
  bool configured_ = false;
  std::vector<Partition> parts_;
  std::unique_ptr<Ring> ring_;
  std::deque<IruRequest> arrivals_;  // sorted by arrival cycle
  std::deque<IruRequest> pending_;   // oldest first
  std::vector<std::uint32_t> sm_rr_;
  std::uint64_t next_seq_ = 0;
  Cycle exhausted_at_ = kNeverCycle;
  std::vector<IruPartitionCounters> counters_;
  std::vector<RequestRecord> records_;
  std::vector<std::uint64_t> backlog_;  // by request seq offset
  std::uint64_t records_base_seq_ = 0;
};

}  // namespace irusim
