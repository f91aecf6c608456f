#include "irusim/metrics/counters.h"

namespace irusim {

std::uint64_t MetricsCounters::l1_accesses() const {
  std::uint64_t n = 0;
  for (const auto& c : memory.l1) n += c.accesses;
  return n;
}

std::uint64_t MetricsCounters::l1_misses() const {
  std::uint64_t n = 0;
  for (const auto& c : memory.l1) n += c.misses;
  return n;
}

std::uint64_t MetricsCounters::l2_accesses() const {
  std::uint64_t n = 0;
  for (const auto& c : memory.l2) n += c.accesses;
  return n;
}

std::uint64_t MetricsCounters::l2_misses() const {
  std::uint64_t n = 0;
  for (const auto& c : memory.l2) n += c.misses;
  return n;
}

IruPartitionCounters MetricsCounters::iru_total() const {
  IruPartitionCounters t;
  for (const auto& p : iru) t += p;
  return t;
}

std::optional<double> MetricsCounters::filtered_fraction() const {
  const IruPartitionCounters t = iru_total();
  if (t.inserted == 0) return std::nullopt;
  return static_cast<double>(t.filter_merged) / static_cast<double>(t.inserted);
}

std::optional<TagStats> MetricsCounters::tag(const std::string& name) const {
  auto it = per_tag.find(name);
  if (it == per_tag.end()) return std::nullopt;
  return it->second;
}

std::vector<std::pair<std::string, double>> flatten(const MetricsCounters& c) {
  std::vector<std::pair<std::string, double>> out;
  auto add = [&](std::string name, double v) { out.emplace_back(std::move(name), v); };
  auto d = [](std::uint64_t v) { return static_cast<double>(v); };
  add("cycles", d(c.cycles));
  add("kernels", d(c.kernels));
  add("l1_accesses", d(c.l1_accesses()));
  add("l1_misses", d(c.l1_misses()));
  add("l2_accesses", d(c.l2_accesses()));
  add("l2_misses", d(c.l2_misses()));
  add("dram_reads", d(c.memory.dram_reads));
  add("dram_writes", d(c.memory.dram_writes));
  add("iru_bypass_reads", d(c.memory.iru_bypass_reads));
  add("mshr_stall_cycles", d(c.memory.mshr_stall_cycles));
  add("noc_bytes_sm_to_mp", d(c.memory.noc.sm_to_mp_bytes));
  add("noc_bytes_mp_to_sm", d(c.memory.noc.mp_to_sm_bytes));
  add("noc_bytes", d(c.noc_bytes()));
  add("warp_instructions", d(c.warp_instructions));
  add("transactions", d(c.transactions));
  add("software_filtered", d(c.software_filtered));
  add("iru_request_stalls", d(c.iru_request_stalls));
  for (const auto& [name, t] : c.per_tag) {
    add("tag." + name + ".warp_instructions", d(t.warp_instructions));
    add("tag." + name + ".transactions", d(t.transactions));
    add("tag." + name + ".active_lanes", d(t.active_lanes));
  }
  for (std::size_t p = 0; p < c.iru.size(); ++p) {
    const IruPartitionCounters& i = c.iru[p];
    const std::string pre = "iru.p" + std::to_string(p) + ".";
    add(pre + "prefetch_lines", d(i.prefetch_lines));
    add(pre + "elements_prefetched", d(i.elements_prefetched));
    add(pre + "inserted", d(i.inserted));
    add(pre + "collocated_conflicts", d(i.collocated_conflicts));
    add(pre + "filter_merged", d(i.filter_merged));
    add(pre + "replies_instant", d(i.replies_instant));
    add(pre + "replies_timeout", d(i.replies_timeout));
    add(pre + "replies_drain", d(i.replies_drain));
    add(pre + "replies_empty", d(i.replies_empty));
    add(pre + "elements_delivered", d(i.elements_delivered));
    add(pre + "ring_messages", d(i.ring_messages));
  }
  return out;
}

}  // namespace irusim
