#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "samestats/stats.hpp"

namespace samestats {

// Graph counts per edge count 0..C(n,2) for one order.
struct EdgeHistogram {
  int n = 0;
  std::vector<std::uint64_t> counts;

  std::uint64_t total() const noexcept;
  bool complement_symmetric() const noexcept;
};

EdgeHistogram edge_histogram(int n, std::span<const StatVector> stats);

}  // namespace samestats
