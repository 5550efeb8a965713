#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hypa {

// First-order nodes and k-order nodes (k-grams) are interned to dense ids in
// first-appearance order, so all downstream structures are plain arrays.
using NodeId = std::uint32_t;
using GramId = std::uint32_t;
using Count = std::uint64_t;

inline constexpr GramId kInvalidGram = static_cast<GramId>(-1);

struct ParseError : std::runtime_error {
  std::size_t line;
  ParseError(std::size_t line_no, const std::string& what)
      : std::runtime_error("line " + std::to_string(line_no) + ": " + what),
        line(line_no) {}
};

// Raised when degree constraints cannot be satisfied on the possible-edge
// support (a node demands in- or out-mass but no candidate entry can carry it).
struct InfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace hypa
