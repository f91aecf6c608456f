#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace irusim {

using Address = std::uint64_t;
using Cycle = std::uint64_t;
using NodeId = std::uint32_t;
using EdgeIndex = std::uint64_t;

// IRU elements carry 24-bit indices; graphs and index arrays are capped below.
inline constexpr std::uint32_t kIndexBits = 24;
inline constexpr std::uint64_t kMaxIndexDomain = 1ull << kIndexBits;

inline constexpr Cycle kNeverCycle = std::numeric_limits<Cycle>::max();

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class SimulationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace irusim
