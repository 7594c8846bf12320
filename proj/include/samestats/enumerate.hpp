#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <istream>
#include <span>
#include <utility>
#include <vector>

#include "samestats/graph.hpp"

namespace samestats {

inline constexpr int kMaxEnumerationOrder = 10;

// Number of non-isomorphic simple graphs on n vertices, n = 1..10.
std::uint64_t known_graph_count(int n);

struct EnumerationRun {
  int n = 0;
  std::uint64_t produced = 0;
  std::uint64_t candidates_examined = 0;
  std::chrono::duration<double> wall_time{};
};

struct EnumerationOptions {
  // Order 10 needs ~1.4e8 canonicalizations and must be requested explicitly.
  bool allow_order_ten = false;
  unsigned workers = 0;  // 0 = hardware concurrency
};

// One canonical representative per isomorphism class, sorted by edge count
// then certificate. Built by augmenting every canonical graph on k vertices
// with a new vertex joined to each neighbour subset.
std::vector<Graph> enumerate_all(int n, const EnumerationOptions& options = {},
                                 EnumerationRun* run = nullptr);

// Single augmentation step: all canonical graphs on k+1 vertices from the
// complete canonical set on k vertices.
std::vector<Graph> extend_by_one_vertex(std::span<const Graph> parents, unsigned workers = 0,
                                        std::uint64_t* candidates = nullptr);

std::vector<std::pair<int, std::uint64_t>> enumeration_counts(int n_max,
                                                              const EnumerationOptions& options = {});

// Reads a graph6 atlas produced by an external enumerator, re-canonicalizes
// every line and checks it contains each isomorphism class exactly once.
// Returns the canonical representatives in emission order.
std::vector<Graph> import_graph6_atlas(int n, std::istream& in);

}  // namespace samestats
