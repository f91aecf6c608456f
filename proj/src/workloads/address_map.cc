#include <algorithm>

#include "irusim/workloads/address_map.h"

namespace irusim {

AddressMap::AddressMap(const GpuConfig& cfg)
    : align_(static_cast<Address>(cfg.line_size) * cfg.interleave_lines * cfg.num_mem_partitions),
      next_(align_) {}  // keep address 0 unmapped

const MappedArray& AddressMap::add(const std::string& name, std::uint32_t elem_width, std::uint64_t length) {
  if (index_.count(name)) throw ConfigError("array '" + name + "' mapped twice");
  if (elem_width == 0) throw ConfigError("array '" + name + "' has zero element width");
  MappedArray a{name, next_, elem_width, length};
  const Address bytes = std::max<Address>(1, elem_width * length);
  next_ += (bytes + align_ - 1) / align_ * align_;
  index_[name] = arrays_.size();
  arrays_.push_back(a);
  return arrays_.back();
}

const MappedArray& AddressMap::reserve(const std::string& name, std::uint64_t length) {
  const MappedArray old = (*this)[name];
  if (length <= old.length) return (*this)[name];
  arrays_.erase(arrays_.begin() + static_cast<std::ptrdiff_t>(index_.at(name)));
  index_.erase(name);
  for (std::size_t i = 0; i < arrays_.size(); ++i) index_[arrays_[i].name] = i;
  return add(name, old.elem_width, std::max(length, 2 * old.length));
}

const MappedArray& AddressMap::operator[](const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw ConfigError("array '" + name + "' is not mapped");
  return arrays_[it->second];
}

const MappedArray* AddressMap::find(Address addr) const {
  auto it = std::upper_bound(arrays_.begin(), arrays_.end(), addr,
                             [](Address x, const MappedArray& a) { return x < a.base; });
  if (it == arrays_.begin()) return nullptr;
  --it;
  return addr < it->end() ? &*it : nullptr;
}

void AddressMap::check(const WarpAccess& a) const {
  for (std::uint32_t lane = 0; lane < a.lane_addresses.size(); ++lane) {
    if (!a.lane_active(lane)) continue;
    if (!find(a.lane_addresses[lane])) {
      throw SimulationError("unmapped address " + std::to_string(a.lane_addresses[lane]) + " in lane " +
                            std::to_string(lane) + " of '" + a.tag + "'");
    }
  }
}

void AddressMap::check_iru(const IruConfig& cfg) const {
  if (!cfg.enabled()) return;
  auto covered = [&](Address base, std::uint64_t bytes, const char* what) -> const MappedArray& {
    const MappedArray* a = find(base);
    if (!a || base + bytes > a->end()) throw ConfigError(std::string("iru ") + what + " range is unmapped");
    return *a;
  };
  const MappedArray& idx = covered(cfg.indices_base, cfg.num_elements * 4, "indices");
  covered(cfg.target_base, 1, "target");
  if (cfg.secondary_base) {
    const MappedArray& sec = covered(*cfg.secondary_base, cfg.num_elements * 4, "secondary");
    if (&sec == &idx) throw ConfigError("iru index and secondary arrays overlap");
  }
}

}  // namespace irusim
