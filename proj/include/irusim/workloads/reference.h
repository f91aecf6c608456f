#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "irusim/graph/graph.h"

namespace irusim {

inline constexpr std::uint32_t kUnreached = std::numeric_limits<std::uint32_t>::max();
inline constexpr std::uint32_t kInfDistance = std::numeric_limits<std::uint32_t>::max();
// SSSP distances are unsigned fixed point with this many fraction bits.
inline constexpr int kDistanceFractionBits = 8;

std::uint32_t to_fixed_weight(float w);
// Saturating d + w; never produces kInfDistance from finite inputs.
std::uint32_t add_distance(std::uint32_t d, std::uint32_t w);

// Sequential CPU references.
std::vector<std::uint32_t> bfs_reference(const CsrGraph& g, NodeId source);
std::vector<std::uint32_t> sssp_reference(const CsrGraph& g, NodeId source);  // Dijkstra, fixed point
std::vector<double> pagerank_reference(const CsrGraph& g, std::uint32_t iterations, double damping);

}  // namespace irusim
