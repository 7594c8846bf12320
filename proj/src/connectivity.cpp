// Node and edge connectivity by unit-capacity augmenting paths. Residual
// graphs are small enough (at most 24 nodes) to keep as neighbour bitmasks.

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>

#include "samestats/stats.hpp"

namespace samestats {

namespace {

constexpr int kSplitNodes = 2 * kMaxOrder;
using NodeMask = std::uint32_t;

// BFS for one augmenting path; fills parent and returns whether sink was reached.
template <std::size_t N>
bool find_path(const std::array<NodeMask, N>& residual, int source, int sink, std::array<std::int8_t, N>& parent) {
  NodeMask visited = NodeMask{1} << source;
  std::array<int, N> queue{};
  int head = 0;
  int tail = 0;
  queue[static_cast<std::size_t>(tail++)] = source;
  while (head < tail) {
    const int x = queue[static_cast<std::size_t>(head++)];
    for (NodeMask next = residual[static_cast<std::size_t>(x)] & ~visited; next; next &= next - 1) {
      const int y = std::countr_zero(next);
      visited |= NodeMask{1} << y;
      parent[static_cast<std::size_t>(y)] = static_cast<std::int8_t>(x);
      if (y == sink) return true;
      queue[static_cast<std::size_t>(tail++)] = y;
    }
  }
  return false;
}

// Internally vertex-disjoint s-t paths, counted up to limit. Vertex v is
// split into in(v)=2v and out(v)=2v+1 joined by a unit arc.
int disjoint_paths(const Graph& g, int s, int t, int limit) {
  std::array<NodeMask, kSplitNodes> residual{};
  for (int v = 0; v < g.order(); ++v) {
    residual[static_cast<std::size_t>(2 * v)] |= NodeMask{1} << (2 * v + 1);
    for (VertexMask nb = g.adjacency(v); nb; nb &= static_cast<VertexMask>(nb - 1)) {
      residual[static_cast<std::size_t>(2 * v + 1)] |= NodeMask{1} << (2 * std::countr_zero(nb));
    }
  }
  const int source = 2 * s + 1;
  const int sink = 2 * t;
  std::array<std::int8_t, kSplitNodes> parent{};
  int flow = 0;
  while (flow < limit && find_path(residual, source, sink, parent)) {
    for (int y = sink; y != source;) {
      const int x = parent[static_cast<std::size_t>(y)];
      residual[static_cast<std::size_t>(x)] &= ~(NodeMask{1} << y);
      residual[static_cast<std::size_t>(y)] |= NodeMask{1} << x;
      y = x;
    }
    ++flow;
  }
  return flow;
}

// Edge-disjoint s-t paths, counted up to limit; each undirected edge carries
// unit capacity in both directions.
int edge_disjoint_paths(const Graph& g, int s, int t, int limit) {
  const int n = g.order();
  std::array<std::array<std::int8_t, kMaxOrder>, kMaxOrder> cap{};
  std::array<NodeMask, kMaxOrder> residual{};
  for (int u = 0; u < n; ++u) {
    residual[static_cast<std::size_t>(u)] = g.adjacency(u);
    for (VertexMask nb = g.adjacency(u); nb; nb &= static_cast<VertexMask>(nb - 1)) {
      cap[static_cast<std::size_t>(u)][static_cast<std::size_t>(std::countr_zero(nb))] = 1;
    }
  }
  std::array<std::int8_t, kMaxOrder> parent{};
  int flow = 0;
  while (flow < limit && find_path(residual, s, t, parent)) {
    for (int y = t; y != s;) {
      const int x = parent[static_cast<std::size_t>(y)];
      auto& fwd = cap[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
      auto& back = cap[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)];
      --fwd;
      ++back;
      if (fwd == 0) residual[static_cast<std::size_t>(x)] &= ~(NodeMask{1} << y);
      residual[static_cast<std::size_t>(y)] |= NodeMask{1} << x;
      y = x;
    }
    ++flow;
  }
  return flow;
}

}  // namespace

int node_connectivity(const Graph& g) {
  const int n = g.order();
  if (n == 1 || !is_connected(g)) return 0;
  if (g.edge_count() == pair_count(n)) return n - 1;
  // Some vertex among the first kappa+1 lies outside a minimum separator and
  // has a non-neighbour of larger index on its far side, so scanning sources
  // i <= best over non-adjacent pairs (i, j > i) reaches the minimum.
  int best = min_degree(g);
  for (int i = 0; i < n && i <= best; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (g.has_edge(i, j)) continue;
      best = std::min(best, disjoint_paths(g, i, j, best));
    }
  }
  return best;
}

int edge_connectivity(const Graph& g) {
  const int n = g.order();
  if (n == 1 || !is_connected(g)) return 0;
  int best = min_degree(g);
  for (int t = 1; t < n && best > 0; ++t) best = std::min(best, edge_disjoint_paths(g, 0, t, best));
  return best;
}

}  // namespace samestats
