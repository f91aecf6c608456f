#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "irusim/gpu/config.h"
#include "irusim/gpu/memory_system.h"
#include "irusim/gpu/warp_access.h"
#include "irusim/iru/iru.h"
#include "irusim/metrics/counters.h"

namespace irusim {

// A warp's instruction stream. next() is called when the warp is scheduled and
// may look at functional state updated by earlier completions; complete() is
// called once the access has been serviced and applies its functional effect.
class WarpProgram {
 public:
  virtual ~WarpProgram() = default;
  // Fills `out` (lane addresses, mask, kind, tag) and returns true, or returns
  // false when the warp has finished.
  virtual bool next(WarpAccess& out) = 0;
  // `reply` is set for iru_request accesses.
  virtual void complete(const WarpAccess& access, const IruReply* reply) = 0;
};

// Replays a fixed list of accesses. Handy for tests and synthetic kernels.
class StaticWarpProgram : public WarpProgram {
 public:
  explicit StaticWarpProgram(std::vector<WarpAccess> accesses) : accesses_(std::move(accesses)) {}
  bool next(WarpAccess& out) override;
  void complete(const WarpAccess& access, const IruReply* reply) override;
  const std::vector<IruReply>& replies() const { return replies_; }

 private:
  std::vector<WarpAccess> accesses_;
  std::size_t pos_ = 0;
  std::vector<IruReply> replies_;
};

struct Kernel {
  std::string name;
  std::vector<std::unique_ptr<WarpProgram>> warps;  // warp w runs on SM w % num_sms
  std::optional<IruConfig> iru;
  IruInput iru_input;
  Cycle start_cycle = 0;  // set by Gpu::run
  Cycle end_cycle = 0;
};

// Called for every access issued; throws to reject an address.
using AccessChecker = std::function<void(const WarpAccess&)>;

class Gpu {
 public:
  explicit Gpu(const GpuConfig& cfg);

  const GpuConfig& config() const { return cfg_; }
  // Runs one kernel from the current clock until all its warps finish and all
  // its memory traffic has drained. Returns the kernel's cycle count.
  Cycle run(Kernel& kernel);
  Cycle now() const { return now_; }

  void set_access_checker(AccessChecker c) { checker_ = std::move(c); }
  // Invoked after each kernel with the IRU state of that kernel.
  void set_kernel_observer(std::function<void(const Kernel&, const IruUnit&)> f) { observer_ = std::move(f); }

  // Cumulative counters over every kernel run so far.
  MetricsCounters metrics() const;
  const MemorySystem& memory() const { return memory_; }
  MemorySystem& memory() { return memory_; }
  const IruUnit& iru() const { return iru_; }

 private:
  class MemoryPort : public IruMemoryPort {
   public:
    explicit MemoryPort(MemorySystem& m) : mem_(m) {}
    std::uint32_t partition_of(Address block) const override { return mem_.partition_of(block); }
    Cycle fetch_line(std::uint32_t partition, Address block, bool bypass, Cycle now) override {
      return mem_.iru_fetch(partition, block, bypass, now);
    }

   private:
    MemorySystem& mem_;
  };

  struct WarpState {
    WarpProgram* program = nullptr;
    std::uint32_t sm = 0;
    std::uint32_t id = 0;
    std::optional<WarpAccess> held;  // issued-but-stalled access (IRU buffer full)
    std::optional<WarpAccess> waiting_on;
    std::optional<IruReply> reply;
    bool done = false;
  };
  // A warp becomes schedulable again; its blocking access (if any) completes.
  struct Event {
    Cycle cycle;
    std::uint32_t sm;
    std::uint32_t warp;
    bool operator>(const Event& o) const {
      if (cycle != o.cycle) return cycle > o.cycle;
      if (sm != o.sm) return sm > o.sm;
      return warp > o.warp;
    }
  };
  struct SmState {
    Resource ldst;
    std::deque<std::uint32_t> ready;    // kernel-local warp ids
    std::deque<std::uint32_t> waiting;  // not yet resident
    std::deque<std::uint32_t> iru_blocked;  // request buffer full; retried after a reply
    std::uint32_t resident = 0;
  };

  enum class IssueResult { kIssued, kFinished, kStalled };
  IssueResult issue(SmState& sm, WarpState& w);
  [[noreturn]] void guard_failure(const Kernel& k, std::size_t done, const char* why) const;

  GpuConfig cfg_;
  MemorySystem memory_;
  MemoryPort port_;
  IruUnit iru_;
  Cycle now_ = 0;
  AccessChecker checker_;
  std::function<void(const Kernel&, const IruUnit&)> observer_;

  // Per-kernel state.
  std::vector<WarpState> warps_;
  std::vector<SmState> sms_;
  std::priority_queue<Event, std::vector<Event>, std::greater<>> events_;
  Cycle drain_until_ = 0;  // latest fire-and-forget ack

  std::uint64_t kernels_ = 0;
  std::uint64_t warp_instructions_ = 0;
  std::uint64_t transactions_ = 0;
  std::uint64_t iru_request_stalls_ = 0;
  std::map<std::string, TagStats> per_tag_;
};

}  // namespace irusim
