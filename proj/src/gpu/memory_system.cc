#include <algorithm>

#include "irusim/gpu/memory_system.h"

namespace irusim {

std::uint32_t partition_of_address(Address block, const GpuConfig& cfg) {
  const std::uint64_t chunk = static_cast<std::uint64_t>(cfg.line_size) * cfg.interleave_lines;
  return static_cast<std::uint32_t>((block / chunk) % cfg.num_mem_partitions);
}

MemorySystem::MemorySystem(const GpuConfig& cfg)
    : cfg_(cfg), partitions_(cfg.num_mem_partitions), mshrs_(cfg.num_sms), sources_(cfg.num_mem_partitions),
      noc_(cfg) {
  cfg_.validate();
  l1_.reserve(cfg.num_sms);
  for (std::uint32_t i = 0; i < cfg.num_sms; ++i) l1_.emplace_back(cfg.l1_size, cfg.l1_assoc, cfg.line_size);
  l2_.reserve(cfg.num_mem_partitions);
  for (std::uint32_t i = 0; i < cfg.num_mem_partitions; ++i) {
    l2_.emplace_back(cfg.l2_per_partition(), cfg.l2_assoc, cfg.line_size);
  }
}

Cycle MemorySystem::reserve_mshr(std::uint32_t sm, Cycle lookup) {
  auto& heap = mshrs_[sm];
  while (!heap.empty() && heap.top() <= lookup) heap.pop();
  if (heap.size() < cfg_.mshr_per_l1) return lookup;
  // All MSHRs busy: the miss retries every cycle until the earliest one frees.
  const Cycle freed = heap.top();
  heap.pop();
  mshr_stall_cycles_ += freed - lookup;
  return freed;
}

CacheAccessResult MemorySystem::l2_access(std::uint32_t p, const MemoryTransaction& tx, Cycle arrival, bool write) {
  if (partition_of(tx.block_address) != p) {
    throw SimulationError("wrong partition: block " + std::to_string(tx.block_address) + " routed to partition " +
                          std::to_string(p));
  }
  Partition& part = partitions_[p];
  const Cycle start = part.l2_port.acquire(arrival, 1);
  CacheLookup look = l2_[p].access(tx.block_address, start, write);
  CacheAccessResult out;
  out.lookup = start;
  out.hit = look.hit;
  if (look.hit) {
    out.ready = std::max(start + cfg_.latency.l2_hit, look.ready);
  } else {
    const Cycle dram_start = part.dram.acquire(start + cfg_.latency.l2_hit, cfg_.dram_cycles_per_line);
    out.ready = dram_start + cfg_.latency.dram;
    l2_[p].fill_ready(tx.block_address, out.ready);
    ++dram_reads_;
  }
  if (look.dirty_victim) {
    part.dram.acquire(start + cfg_.latency.l2_hit, cfg_.dram_cycles_per_line);
    ++dram_writes_;
  }
  return out;
}

CacheAccessResult MemorySystem::load(std::uint32_t sm, const MemoryTransaction& tx, Cycle lookup) {
  CacheAccessResult out;
  CacheLookup look = l1_[sm].access(tx.block_address, lookup);
  if (look.hit) {
    out.hit = true;
    out.lookup = lookup;
    out.ready = std::max(lookup + cfg_.latency.l1_hit, look.ready);
    return out;
  }
  const Cycle granted = reserve_mshr(sm, lookup);
  out.lookup = granted;
  out.stall = granted - lookup;
  const std::uint32_t p = partition_of(tx.block_address);
  ++sources_[p].l1_load_misses;
  const NocTransfer req =
      noc_.transfer(Endpoint::sm(sm), Endpoint::partition(p), 0, granted + cfg_.latency.l1_hit);
  const CacheAccessResult l2 = l2_access(p, tx, req.arrive);
  const NocTransfer fill = noc_.transfer(Endpoint::partition(p), Endpoint::sm(sm), cfg_.line_size, l2.ready);
  out.ready = fill.arrive;
  l1_[sm].fill_ready(tx.block_address, out.ready);
  mshrs_[sm].push(out.ready);
  return out;
}

Cycle MemorySystem::store(std::uint32_t sm, const MemoryTransaction& tx, Cycle lookup) {
  l1_[sm].probe_write(tx.block_address);
  const std::uint32_t p = partition_of(tx.block_address);
  ++sources_[p].l1_write_throughs;
  const NocTransfer req = noc_.transfer(Endpoint::sm(sm), Endpoint::partition(p), cfg_.store_payload_bytes,
                                        lookup + cfg_.latency.l1_hit);
  const CacheAccessResult l2 = l2_access(p, tx, req.arrive, /*write=*/true);
  return noc_.transfer(Endpoint::partition(p), Endpoint::sm(sm), 0, l2.ready).arrive;
}

Cycle MemorySystem::atomic(std::uint32_t sm, const MemoryTransaction& tx, Cycle send) {
  if (!is_atomic(tx.kind)) throw SimulationError(std::string("atomic_access with non-atomic kind ") + to_string(tx.kind));
  const std::uint32_t p = partition_of(tx.block_address);
  ++sources_[p].atomics;
  const NocTransfer req = noc_.transfer(Endpoint::sm(sm), Endpoint::partition(p), cfg_.store_payload_bytes, send);
  const Cycle occupancy = std::max<Cycle>(1, static_cast<Cycle>(tx.lanes) * cfg_.atomic_cycles_per_lane);
  const CacheAccessResult l2 = l2_access(p, tx, req.arrive, /*write=*/true);
  const Cycle done = partitions_[p].atomic_unit.acquire(l2.ready, occupancy) + occupancy;
  return noc_.transfer(Endpoint::partition(p), Endpoint::sm(sm), 0, done).arrive;
}

Cycle MemorySystem::iru_fetch(std::uint32_t p, Address block, bool bypass_l2, Cycle now) {
  if (bypass_l2) {
    ++dram_reads_;
    ++iru_bypass_reads_;
    return partitions_[p].dram.acquire(now, cfg_.dram_cycles_per_line) + cfg_.latency.dram;
  }
  ++sources_[p].iru_fetches;
  MemoryTransaction tx{block, 0, 0, AccessKind::kLoad, 0};
  return l2_access(p, tx, now).ready;
}

void MemorySystem::retire(Cycle now) {
  for (Partition& p : partitions_) {
    p.l2_port.retire(now);
    p.atomic_unit.retire(now);
    p.dram.retire(now);
  }
  noc_.retire(now);
}

MemoryCounters MemorySystem::counters() const {
  MemoryCounters c;
  for (const auto& cache : l1_) c.l1.push_back(cache.counters());
  for (const auto& cache : l2_) c.l2.push_back(cache.counters());
  c.l2_sources = sources_;
  c.dram_reads = dram_reads_;
  c.dram_writes = dram_writes_;
  c.iru_bypass_reads = iru_bypass_reads_;
  c.mshr_stall_cycles = mshr_stall_cycles_;
  c.noc = noc_.counters();
  return c;
}

}  // namespace irusim
