#include <algorithm>
#include <bit>

#include "irusim/workloads/reference.h"
#include "irusim/workloads/warp_programs.h"

namespace irusim {

const char* to_string(Algorithm a) {
  switch (a) {
    case Algorithm::kBfs: return "bfs";
    case Algorithm::kSssp: return "sssp";
    case Algorithm::kPageRank: return "pr";
  }
  return "unknown";
}

std::vector<IruLane> load_iru(const IruReply& reply) {
  std::vector<IruLane> out(reply.elements.size());
  for (std::size_t i = 0; i < reply.elements.size(); ++i) {
    const IruElement& e = reply.elements[i];
    out[i].enabled = ((reply.enabled_mask >> i) & 1u) != 0;
    if (!out[i].enabled) continue;
    out[i].index = e.index;
    out[i].attribute = e.attribute.value_or(0);
    out[i].position = e.original_position;
  }
  return out;
}

WarpAccess make_access(AccessKind kind, const std::string& tag, const MappedArray& arr,
                       const std::vector<std::uint64_t>& indices, std::uint32_t warp_size) {
  WarpAccess a;
  a.kind = kind;
  a.tag = tag;
  a.lane_addresses.assign(warp_size, 0);
  for (std::size_t i = 0; i < indices.size() && i < warp_size; ++i) {
    a.lane_addresses[i] = arr.at(indices[i]);
    a.active_mask |= LaneMask{1} << i;
  }
  return a;
}

namespace {

std::vector<std::uint64_t> iota_indices(std::uint64_t first, std::uint64_t count) {
  std::vector<std::uint64_t> v(count);
  for (std::uint64_t i = 0; i < count; ++i) v[i] = first + i;
  return v;
}

}  // namespace

// ---------------------------------------------------------------------------

ExpandProgram::ExpandProgram(const ExpandSpec& spec, std::vector<NodeId> nodes, std::uint64_t chunk_first,
                             std::vector<EdgeIndex> edges, std::uint64_t out_base)
    : spec_(spec), nodes_(std::move(nodes)), chunk_first_(chunk_first), out_base_(out_base), edges_(std::move(edges)) {
  if (nodes_.empty()) step_ = node_steps();
}

std::uint32_t ExpandProgram::node_steps() const {
  return static_cast<std::uint32_t>((spec_.frontier_array.empty() ? 0 : 1) + 2 + spec_.node_arrays.size());
}

bool ExpandProgram::next(WarpAccess& out) {
  const AddressMap& map = *spec_.map;
  const std::uint32_t ws = spec_.warp_size;
  std::uint32_t s = step_;
  if (s >= node_steps()) return next_edge_batch(out);
  if (!spec_.frontier_array.empty()) {
    if (s == 0) {
      out = make_access(AccessKind::kLoad, spec_.prefix + "load_" + spec_.frontier_array, map[spec_.frontier_array],
                        iota_indices(chunk_first_, nodes_.size()), ws);
      ++step_;
      return true;
    }
    --s;
  }
  if (s < 2 + spec_.node_arrays.size()) {
    std::vector<std::uint64_t> idx(nodes_.begin(), nodes_.end());
    if (s == 1) {
      for (auto& i : idx) ++i;
    }
    const std::string& name = s < 2 ? std::string("row_offsets") : spec_.node_arrays[s - 2];
    out = make_access(AccessKind::kLoad, spec_.prefix + "load_" + name, map[name], idx, ws);
    ++step_;
    return true;
  }
  return next_edge_batch(out);
}

bool ExpandProgram::next_edge_batch(WarpAccess& out) {
  const AddressMap& map = *spec_.map;
  const std::uint32_t ws = spec_.warp_size;
  const std::uint64_t batches = (edges_.size() + ws - 1) / ws;
  const std::uint32_t per_batch = static_cast<std::uint32_t>(spec_.edge_arrays.size() + spec_.out_arrays.size());
  if (batch_ >= batches || per_batch == 0) return false;
  const std::uint64_t first = batch_ * ws;
  const std::uint64_t count = std::min<std::uint64_t>(ws, edges_.size() - first);
  if (sub_ < spec_.edge_arrays.size()) {
    const std::string& name = spec_.edge_arrays[sub_];
    std::vector<std::uint64_t> idx(edges_.begin() + static_cast<std::ptrdiff_t>(first),
                                   edges_.begin() + static_cast<std::ptrdiff_t>(first + count));
    out = make_access(AccessKind::kLoad, spec_.prefix + "load_" + name, map[name], idx, ws);
  } else {
    const std::string& name = spec_.out_arrays[sub_ - spec_.edge_arrays.size()];
    out = make_access(AccessKind::kStore, spec_.prefix + "store_" + name, map[name],
                      iota_indices(out_base_ + first, count), ws);
  }
  if (++sub_ == per_batch) {
    sub_ = 0;
    ++batch_;
  }
  return true;
}

// ---------------------------------------------------------------------------

namespace {

enum Op : std::uint32_t {
  kGatherLabel,
  kStoreLabel,
  kCounter,
  kStoreFrontier,
  kAtomicMin,
  kLoadSrc,
  kStorePred,
  kAtomicAdd,
};

const std::vector<Op>& ops_for(Algorithm a) {
  static const std::vector<Op> bfs{kGatherLabel, kStoreLabel, kCounter, kStoreFrontier};
  static const std::vector<Op> sssp{kAtomicMin, kLoadSrc, kStorePred, kCounter, kStoreFrontier};
  static const std::vector<Op> pr{kAtomicAdd};
  switch (a) {
    case Algorithm::kBfs: return bfs;
    case Algorithm::kSssp: return sssp;
    case Algorithm::kPageRank: return pr;
  }
  return pr;
}

const char* attr_array(Algorithm a) { return a == Algorithm::kSssp ? "edge_dist" : "edge_contrib"; }

}  // namespace

ContractProgram::ContractProgram(ContractState& state, std::uint64_t first, std::uint64_t count)
    : s_(state), iru_(false), first_(first), count_(count) {
  for (std::uint64_t i = first; i < first + count; ++i) {
    const std::uint32_t attr = s_.edge_attr ? (*s_.edge_attr)[i] : 0;
    lanes_.push_back({(*s_.edge_frontier)[i], attr, static_cast<std::uint32_t>(i)});
  }
}

ContractProgram::ContractProgram(ContractState& state) : s_(state), iru_(true) {}

std::vector<std::uint64_t> ContractProgram::lane_values(const std::vector<Lane>& lanes, int what) const {
  std::vector<std::uint64_t> out;
  out.reserve(lanes.size());
  for (const Lane& l : lanes) out.push_back(what == 0 ? l.v : l.pos);
  return out;
}

bool ContractProgram::next(WarpAccess& out) {
  const std::string prefix = std::string(to_string(s_.algo)) + ".";
  const AddressMap& map = *s_.map;
  while (!finished_) {
    if (!have_batch_) {
      if (iru_) {
        out = WarpAccess{};
        out.kind = AccessKind::kIruRequest;
        out.tag = prefix + "load_iru";
        out.lane_addresses.assign(s_.warp_size, 0);
        out.active_mask = s_.warp_size >= 64 ? ~LaneMask{0} : (LaneMask{1} << s_.warp_size) - 1;
        return true;
      }
      // Baseline: read the chunk of the edge frontier (and its attribute array).
      const bool has_attr = s_.algo != Algorithm::kBfs;
      if (op_ == 0) {
        out = make_access(AccessKind::kLoad, prefix + "load_edge_frontier", map["edge_frontier"],
                          iota_indices(first_, count_), s_.warp_size);
        op_ = 1;
        if (!has_attr) {
          have_batch_ = true;
          op_ = 0;
        }
        return true;
      }
      out = make_access(AccessKind::kLoad, prefix + "load_" + attr_array(s_.algo), map[attr_array(s_.algo)],
                        iota_indices(first_, count_), s_.warp_size);
      have_batch_ = true;
      op_ = 0;
      return true;
    }
    if (next_op(out)) return true;
    have_batch_ = false;
    op_ = 0;
    if (!iru_) finished_ = true;
  }
  return false;
}

bool ContractProgram::next_op(WarpAccess& out) {
  const std::vector<Op>& ops = ops_for(s_.algo);
  if (op_ >= ops.size()) return false;
  if (op_ > 0 && winners_.empty()) return false;
  const std::string prefix = std::string(to_string(s_.algo)) + ".";
  const AddressMap& map = *s_.map;
  const std::uint32_t ws = s_.warp_size;
  switch (ops[op_]) {
    case kGatherLabel:
      out = make_access(AccessKind::kLoad, prefix + "gather_label", map["label"], lane_values(lanes_, 0), ws);
      break;
    case kStoreLabel:
      out = make_access(AccessKind::kStore, prefix + "store_label", map["label"], lane_values(winners_, 0), ws);
      break;
    case kCounter:
      out = make_access(AccessKind::kAtomicAdd, prefix + "atomic_frontier_counter", map["frontier_counter"], {0}, ws);
      break;
    case kStoreFrontier:
      out = make_access(AccessKind::kStore, prefix + "store_" + s_.next_frontier_array, map[s_.next_frontier_array],
                        slots_, ws);
      break;
    case kAtomicMin:
      out = make_access(AccessKind::kAtomicMin, prefix + "atomic_min_dist", map["dist"], lane_values(lanes_, 0), ws);
      break;
    case kLoadSrc:
      out = make_access(AccessKind::kLoad, prefix + "load_edge_src", map["edge_src"], lane_values(winners_, 1), ws);
      break;
    case kStorePred:
      out = make_access(AccessKind::kStore, prefix + "store_pred", map["pred"], lane_values(winners_, 0), ws);
      break;
    case kAtomicAdd:
      out = make_access(AccessKind::kAtomicAdd, prefix + "atomic_add_rank", map["next_rank"], lane_values(lanes_, 0),
                        ws);
      break;
  }
  ++op_;
  return true;
}

void ContractProgram::complete(const WarpAccess& access, const IruReply* reply) {
  if (access.kind == AccessKind::kIruRequest) {
    lanes_.clear();
    winners_.clear();
    slots_.clear();
    if (!reply) throw SimulationError("load_iru completed without a reply");
    for (const IruLane& l : load_iru(*reply)) {
      if (!l.enabled) break;  // enabled lanes form a prefix
      lanes_.push_back({l.index, l.attribute, static_cast<std::uint32_t>(s_.slice_first + l.position)});
    }
    if (lanes_.empty()) {
      finished_ = true;
    } else {
      have_batch_ = true;
      op_ = 0;
    }
    return;
  }
  if (!have_batch_ || op_ == 0) return;  // edge-frontier reads carry no functional effect
  switch (ops_for(s_.algo)[op_ - 1]) {
    case kGatherLabel:
      winners_.clear();
      slots_.clear();
      for (const Lane& l : lanes_) {
        if ((*s_.label)[l.v] != kUnreached) continue;
        (*s_.label)[l.v] = s_.level;
        winners_.push_back(l);
        slots_.push_back(s_.next_frontier->size());
        s_.next_frontier->push_back(l.v);
      }
      break;
    case kAtomicMin:
      winners_.clear();
      slots_.clear();
      for (const Lane& l : lanes_) {
        if (l.attr >= (*s_.dist)[l.v]) continue;
        (*s_.dist)[l.v] = l.attr;
        winners_.push_back(l);
        slots_.push_back(s_.next_frontier->size());
        s_.next_frontier->push_back(l.v);
      }
      break;
    case kLoadSrc:
      for (const Lane& l : winners_) (*s_.pred)[l.v] = (*s_.edge_src)[l.pos];
      break;
    case kAtomicAdd:
      for (const Lane& l : lanes_) (*s_.next_rank)[l.v] += static_cast<double>(std::bit_cast<float>(l.attr));
      break;
    default:
      break;
  }
}

// ---------------------------------------------------------------------------

FilterProgram::FilterProgram(FilterState& state, std::uint64_t first, std::uint64_t count)
    : s_(state), first_(first), count_(count) {}

bool FilterProgram::next(WarpAccess& out) {
  const AddressMap& map = *s_.map;
  const std::uint32_t ws = s_.warp_size;
  switch (step_) {
    case 0:
      out = make_access(AccessKind::kLoad, s_.prefix + "filter_load_" + s_.input_array, map[s_.input_array],
                        iota_indices(first_, count_), ws);
      break;
    case 1: {
      std::vector<std::uint64_t> idx;
      for (std::uint64_t i = first_; i < first_ + count_; ++i) idx.push_back((*s_.input)[i]);
      out = make_access(AccessKind::kLoad, s_.prefix + "filter_load_status", map["status"], idx, ws);
      break;
    }
    case 2: {
      if (kept_.empty()) return false;
      std::vector<std::uint64_t> idx(kept_.begin(), kept_.end());
      out = make_access(AccessKind::kStore, s_.prefix + "filter_store_status", map["status"], idx, ws);
      break;
    }
    case 3:
      out = make_access(AccessKind::kAtomicAdd, s_.prefix + "filter_counter", map["frontier_counter"], {0}, ws);
      break;
    case 4:
      out = make_access(AccessKind::kStore, s_.prefix + "filter_store_" + s_.output_array, map[s_.output_array],
                        slots_, ws);
      break;
    default:
      return false;
  }
  ++step_;
  return true;
}

void FilterProgram::complete(const WarpAccess&, const IruReply*) {
  if (step_ != 2) return;  // only the status read has a functional effect
  s_.status_reads += count_;
  for (std::uint64_t i = first_; i < first_ + count_; ++i) {
    const NodeId v = (*s_.input)[i];
    if ((*s_.status)[v] == s_.stamp) continue;
    (*s_.status)[v] = s_.stamp;
    kept_.push_back(v);
    slots_.push_back(s_.output->size());
    s_.output->push_back(v);
  }
  s_.status_writes += kept_.size();
}

// ---------------------------------------------------------------------------

ChunkProgram::ChunkProgram(const AddressMap& map, const std::vector<ChunkOp>& ops, std::uint64_t first,
                           std::uint64_t count, std::uint32_t warp_size)
    : map_(map), ops_(ops), first_(first), count_(count), warp_size_(warp_size) {}

bool ChunkProgram::next(WarpAccess& out) {
  if (pos_ >= ops_.size()) return false;
  const ChunkOp& op = ops_[pos_++];
  out = make_access(op.kind, op.tag, map_[op.array], iota_indices(first_, count_), warp_size_);
  return true;
}

}  // namespace irusim
