#include "irusim/iru/ring.h"

namespace irusim {

Ring::Ring(std::uint32_t partitions, std::uint32_t link_entries) : links_(partitions), capacity_(link_entries) {
  if (partitions < 1) throw ConfigError("ring needs at least one partition");
  if (link_entries < 2) throw ConfigError("ring links need at least 2 entries");
}

bool Ring::link_accepts(const Link& l, Cycle now, std::size_t free_needed) const {
  return l.last_accept != now && l.queue.size() + free_needed <= capacity_;
}

void Ring::push(Link& l, RingMessage msg, Cycle now) {
  l.last_accept = now;
  ++msg.hop_count;
  ++hops_;
  l.queue.push_back({std::move(msg), now + 1});
}

std::size_t Ring::step(Cycle now, const std::function<bool(std::uint32_t, const RingMessage&)>& deliver) {
  const auto n = static_cast<std::uint32_t>(links_.size());
  std::size_t moved = 0;
  for (std::uint32_t p = 0; p < n; ++p) {
    Link& in = links_[(p + n - 1) % n];
    if (in.queue.empty() || in.queue.front().ready > now) continue;
    RingMessage& head = in.queue.front().msg;
    if (head.dest_partition == p) {
      if (!deliver(p, head)) continue;
    } else {
      Link& out = links_[p];
      if (!link_accepts(out, now, 1)) continue;  // backpressure: stays on the link
      push(out, head, now);
    }
    in.queue.pop_front();
    ++moved;
  }
  return moved;
}

bool Ring::can_inject(std::uint32_t partition, Cycle now) const {
  return link_accepts(links_[partition], now, 2);
}

void Ring::inject(std::uint32_t partition, RingMessage msg, Cycle now) {
  if (!can_inject(partition, now)) throw SimulationError("ring link full");
  ++injected_;
  push(links_[partition], std::move(msg), now);
}

std::size_t Ring::in_flight() const {
  std::size_t n = 0;
  for (const auto& l : links_) n += l.queue.size();
  return n;
}

}  // namespace irusim
