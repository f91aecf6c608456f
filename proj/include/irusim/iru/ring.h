#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <vector>

#include "irusim/iru/reordering_hash.h"

namespace irusim {

struct RingMessage {
  IruElement element;
  HashPlacement placement;
  std::uint32_t dest_partition = 0;
  std::uint32_t hop_count = 0;
};

// Unidirectional ring between IRU partitions: link p carries p -> p+1. Each
// link accepts and delivers at most one message per cycle and takes one cycle
// per hop. Injection of new traffic keeps one free slot (bubble flow control)
// so transit traffic can always advance.
class Ring {
 public:
  Ring(std::uint32_t partitions, std::uint32_t link_entries);

  // Arrivals at their owner are handed to `deliver`, which returns false when
  // the owner cannot take the message this cycle. Transit messages move on to
  // the next link. Returns the number of messages that moved.
  std::size_t step(Cycle now, const std::function<bool(std::uint32_t, const RingMessage&)>& deliver);

  bool can_inject(std::uint32_t partition, Cycle now) const;
  void inject(std::uint32_t partition, RingMessage msg, Cycle now);

  std::size_t in_flight() const;
  bool empty() const { return in_flight() == 0; }
  std::uint64_t messages_injected() const { return injected_; }
  std::uint64_t hops() const { return hops_; }
  std::uint32_t partitions() const { return static_cast<std::uint32_t>(links_.size()); }

 private:
  struct Slot {
    RingMessage msg;
    Cycle ready;
  };
  struct Link {
    std::deque<Slot> queue;
    Cycle last_accept = kNeverCycle;
  };
  bool link_accepts(const Link& l, Cycle now, std::size_t free_needed) const;
  void push(Link& l, RingMessage msg, Cycle now);

  std::vector<Link> links_;
  std::uint32_t capacity_;
  std::uint64_t injected_ = 0;
  std::uint64_t hops_ = 0;
};

}  // namespace irusim
