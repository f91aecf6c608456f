#include <algorithm>
#include <sstream>

#include "irusim/gpu/gpu.h"

namespace irusim {

bool StaticWarpProgram::next(WarpAccess& out) {
  if (pos_ >= accesses_.size()) return false;
  out = accesses_[pos_++];
  return true;
}

void StaticWarpProgram::complete(const WarpAccess&, const IruReply* reply) {
  if (reply) replies_.push_back(*reply);
}

Gpu::Gpu(const GpuConfig& cfg)
    : cfg_(cfg), memory_(cfg), port_(memory_), iru_(cfg.warp_size, cfg.line_size, cfg.latency.iru_pipeline) {}

Gpu::IssueResult Gpu::issue(SmState& sm, WarpState& w) {
  WarpAccess a;
  if (w.held) {
    a = std::move(*w.held);
    w.held.reset();
  } else {
    if (!w.program->next(a)) {
      w.done = true;
      return IssueResult::kFinished;
    }
    a.sm_id = w.sm;
    a.warp_id = w.id;
    if (a.lane_addresses.size() < cfg_.warp_size) a.lane_addresses.resize(cfg_.warp_size, 0);
    if (a.active_mask == 0 && a.kind != AccessKind::kIruRequest) {
      throw SimulationError("empty warp access (tag '" + a.tag + "')");
    }
    if (checker_ && a.kind != AccessKind::kIruRequest) checker_(a);
  }

  if (a.kind == AccessKind::kIruRequest) {
    const std::optional<std::uint32_t> p = iru_.reserve_request_slot(w.sm);
    if (!p) {
      ++iru_request_stalls_;
      w.held = std::move(a);
      return IssueResult::kStalled;
    }
    TagStats& t = per_tag_[a.tag];
    ++t.warp_instructions;
    ++t.transactions;
    ++warp_instructions_;
    ++transactions_;
    const Cycle start = sm.ldst.acquire(now_, 1);
    const NocTransfer req = memory_.noc().transfer(Endpoint::sm(w.sm), Endpoint::partition(*p), 0, start);
    iru_.enqueue_request(w.sm, w.id, *p, req.arrive);
    w.waiting_on = std::move(a);
    return IssueResult::kIssued;
  }

  const std::vector<MemoryTransaction> txs = coalesce_warp_access(a, cfg_.line_size);
  TagStats& t = per_tag_[a.tag];
  ++t.warp_instructions;
  t.transactions += txs.size();
  t.active_lanes += static_cast<std::uint64_t>(a.active_lanes());
  ++warp_instructions_;
  transactions_ += txs.size();

  Cycle ready = now_ + 1;
  Cycle last_issue = now_;
  const bool fire_and_forget = a.kind == AccessKind::kStore || a.kind == AccessKind::kAtomicAdd;
  for (const MemoryTransaction& tx : txs) {
    const Cycle slot = sm.ldst.acquire(now_, 1);
    last_issue = slot;
    Cycle done = 0;
    switch (a.kind) {
      case AccessKind::kLoad: done = memory_.load(w.sm, tx, slot).ready; break;
      case AccessKind::kStore: done = memory_.store(w.sm, tx, slot); break;
      case AccessKind::kAtomicAdd:
      case AccessKind::kAtomicMin: done = memory_.atomic(w.sm, tx, slot); break;
      case AccessKind::kIruRequest: break;
    }
    ready = std::max(ready, done);
  }
  if (fire_and_forget) {
    // Stores and reductions do not block the warp; their effect is visible now
    // and the kernel ends only after the last acknowledgement.
    drain_until_ = std::max(drain_until_, ready);
    w.program->complete(a, nullptr);
    events_.push({last_issue + 1, w.sm, w.id});
  } else {
    w.waiting_on = std::move(a);
    events_.push({ready, w.sm, w.id});
  }
  return IssueResult::kIssued;
}

void Gpu::guard_failure(const Kernel& k, std::size_t done, const char* why) const {
  std::ostringstream os;
  os << why << " in kernel '" << k.name << "' at cycle " << now_ << ": " << done << "/" << warps_.size()
     << " warps finished, " << events_.size() << " accesses in flight, " << iru_.pending_requests()
     << " iru requests pending, " << iru_.resident_elements() << " elements resident in the iru";
  throw SimulationError(os.str());
}

Cycle Gpu::run(Kernel& kernel) {
  const Cycle start = now_;
  warps_.clear();
  sms_.assign(cfg_.num_sms, SmState{});
  events_ = {};
  drain_until_ = now_;
  for (auto& sm : sms_) sm.ldst.acquire(now_, 0);

  if (kernel.iru) {
    iru_.configure(*kernel.iru, kernel.iru_input, port_);
  } else {
    iru_.disable();
  }
  iru_.clear_records();

  for (std::size_t i = 0; i < kernel.warps.size(); ++i) {
    WarpState w;
    w.program = kernel.warps[i].get();
    w.sm = static_cast<std::uint32_t>(i % cfg_.num_sms);
    w.id = static_cast<std::uint32_t>(i);
    warps_.push_back(std::move(w));
    SmState& sm = sms_[warps_.back().sm];
    if (sm.resident < cfg_.warps_per_sm()) {
      ++sm.resident;
      sm.ready.push_back(warps_.back().id);
    } else {
      sm.waiting.push_back(warps_.back().id);
    }
  }

  std::size_t done = 0;
  while (true) {
    if (now_ - start > cfg_.max_cycles) guard_failure(kernel, done, "max-cycle budget exceeded");
    memory_.retire(now_);

    while (!events_.empty() && events_.top().cycle <= now_) {
      const Event ev = events_.top();
      events_.pop();
      WarpState& w = warps_[ev.warp];
      if (w.waiting_on) {
        w.program->complete(*w.waiting_on, w.reply ? &*w.reply : nullptr);
        w.waiting_on.reset();
        w.reply.reset();
      }
      sms_[w.sm].ready.push_back(w.id);
    }

    if (iru_.configured()) {
      std::vector<IruReply> replies = iru_.tick(now_);
      if (!replies.empty()) {
        // Replies return request-buffer credits.
        for (SmState& sm : sms_) {
          sm.ready.insert(sm.ready.end(), sm.iru_blocked.begin(), sm.iru_blocked.end());
          sm.iru_blocked.clear();
        }
      }
      for (IruReply& r : replies) {
        WarpState& w = warps_.at(r.warp_id);
        Cycle arrive = r.reply_cycle;
        const std::uint32_t payload = r.enabled_mask ? cfg_.line_size : 0;
        for (std::uint32_t k = 0; k < r.reply_count; ++k) {
          const NocTransfer t = memory_.noc().transfer(Endpoint::partition(r.partition), Endpoint::sm(r.sm_id),
                                                       payload, r.reply_cycle);
          arrive = std::max(arrive, t.arrive);
        }
        events_.push({arrive, w.sm, w.id});
        w.reply = std::move(r);
      }
    }

    for (SmState& sm : sms_) {
      if (sm.ldst.next_free() > now_) continue;
      while (!sm.ready.empty()) {
        const std::uint32_t id = sm.ready.front();
        sm.ready.pop_front();
        const IssueResult res = issue(sm, warps_[id]);
        if (res == IssueResult::kIssued) break;
        if (res == IssueResult::kStalled) {
          // A blocked warp is skipped; the slot goes to the next ready warp.
          sm.iru_blocked.push_back(id);
          continue;
        }
        ++done;
        --sm.resident;
        if (!sm.waiting.empty()) {
          ++sm.resident;
          sm.ready.push_back(sm.waiting.front());
          sm.waiting.pop_front();
        }
      }
    }

    if (done == warps_.size() && events_.empty()) break;

    Cycle next = kNeverCycle;
    for (const SmState& sm : sms_) {
      if (!sm.ready.empty()) next = std::min(next, std::max(now_ + 1, sm.ldst.next_free()));
    }
    if (!events_.empty()) next = std::min(next, std::max(now_ + 1, events_.top().cycle));
    if (iru_.configured() && iru_.busy()) next = std::min(next, iru_.next_event(now_));
    if (next == kNeverCycle) guard_failure(kernel, done, "deadlock");
    now_ = next;
  }
  if (iru_.configured() && iru_.pending_requests() > 0) {
    guard_failure(kernel, done, "iru requests left unanswered");
  }
  now_ = std::max(now_, drain_until_);
  ++kernels_;
  kernel.start_cycle = start;
  kernel.end_cycle = now_;
  if (observer_) observer_(kernel, iru_);
  return now_ - start;
}

MetricsCounters Gpu::metrics() const {
  MetricsCounters m;
  m.cycles = now_;
  m.kernels = kernels_;
  m.memory = memory_.counters();
  m.warp_instructions = warp_instructions_;
  m.transactions = transactions_;
  m.per_tag = per_tag_;
  m.iru = iru_.counters();
  m.iru_request_stalls = iru_request_stalls_;
  return m;
}

}  // namespace irusim
