#include <random>

#include "irusim/graph/graph.h"

namespace irusim {
namespace {

// Portable [0,1) from the raw engine output; std distributions are not
// specified bit-for-bit across standard libraries.
double unit_double(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

EdgeList generate_rmat(const RmatParams& p) {
  if (p.scale < 0 || p.scale > 24) throw ConfigError("rmat scale must be in [0, 24]");
  if (p.edge_factor < 0) throw ConfigError("rmat edge factor must be nonnegative");
  if (p.a < 0 || p.b < 0 || p.c < 0) throw ConfigError("rmat probabilities must be nonnegative");
  if (p.a + p.b + p.c > 1.0 + 1e-12) throw ConfigError("rmat probabilities a+b+c exceed 1");

  const std::uint64_t n = 1ull << p.scale;
  const std::uint64_t m = n * static_cast<std::uint64_t>(p.edge_factor);
  EdgeList out;
  out.num_nodes = n;
  out.edges.reserve(m);
  std::mt19937_64 rng(p.seed);
  const double ab = p.a + p.b;
  const double abc = ab + p.c;
  for (std::uint64_t e = 0; e < m; ++e) {
    std::uint64_t src = 0, dst = 0;
    for (int level = 0; level < p.scale; ++level) {
      const double r = unit_double(rng);
      src <<= 1;
      dst <<= 1;
      if (r < p.a) {
      } else if (r < ab) {
        dst |= 1;
      } else if (r < abc) {
        src |= 1;
      } else {
        src |= 1;
        dst |= 1;
      }
    }
    out.edges.push_back({static_cast<NodeId>(src), static_cast<NodeId>(dst), std::nullopt});
  }
  return out;
}

EdgeList generate_grid(std::uint64_t width, std::uint64_t height) {
  if (width < 1 || height < 1) throw ConfigError("grid dimensions must be >= 1");
  if (width > kMaxIndexDomain || height > kMaxIndexDomain || width * height >= kMaxIndexDomain) {
    throw ConfigError("grid exceeds the 2^24 node limit");
  }
  EdgeList out;
  out.num_nodes = width * height;
  auto id = [width](std::uint64_t x, std::uint64_t y) { return static_cast<NodeId>(y * width + x); };
  for (std::uint64_t y = 0; y < height; ++y) {
    for (std::uint64_t x = 0; x < width; ++x) {
      if (x > 0) out.edges.push_back({id(x, y), id(x - 1, y), std::nullopt});
      if (x + 1 < width) out.edges.push_back({id(x, y), id(x + 1, y), std::nullopt});
      if (y > 0) out.edges.push_back({id(x, y), id(x, y - 1), std::nullopt});
      if (y + 1 < height) out.edges.push_back({id(x, y), id(x, y + 1), std::nullopt});
    }
  }
  return out;
}

EdgeList symmetrize(const EdgeList& in) {
  EdgeList out;
  out.num_nodes = in.num_nodes;
  out.edges.reserve(in.edges.size() * 2);
  for (const Edge& e : in.edges) {
    out.edges.push_back(e);
    if (e.src != e.dst) out.edges.push_back({e.dst, e.src, e.weight});
  }
  return out;
}

void assign_random_weights(EdgeList& edges, std::uint32_t max_weight, std::uint64_t seed) {
  if (max_weight < 1) throw ConfigError("max weight must be >= 1");
  std::mt19937_64 rng(seed);
  for (Edge& e : edges.edges) e.weight = static_cast<float>(1 + rng() % max_weight);
}

}  // namespace irusim
