#include "samestats/graph.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "samestats/error.hpp"

namespace samestats {

namespace {

void check_order(int n) {
  if (n < 1) throw Error(Errc::OrderTooSmall, "graph order must be at least 1, got " + std::to_string(n));
  if (n > kMaxOrder) {
    throw Error(Errc::OrderTooLarge,
                "graph order " + std::to_string(n) + " exceeds " + std::to_string(kMaxOrder));
  }
}

void check_vertex(const Graph& g, int v) {
  if (v < 0 || v >= g.order()) {
    throw Error(Errc::InvalidVertex,
                "vertex " + std::to_string(v) + " outside 0.." + std::to_string(g.order() - 1));
  }
}

}  // namespace

int PackedBits::popcount() const noexcept {
  return std::popcount(words_[0]) + std::popcount(words_[1]);
}

std::size_t PackedBits::hash() const noexcept {
  std::uint64_t h = words_[0] * 0x9E3779B97F4A7C15ULL;
  h ^= (words_[1] + 0x632BE59BD9B4E019ULL) + (h << 6) + (h >> 2);
  return static_cast<std::size_t>(h);
}

Graph Graph::from_rows(int n, const std::array<VertexMask, kMaxOrder>& rows) {
  Graph g;
  g.n_ = n;
  g.rows_ = rows;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if ((rows[static_cast<std::size_t>(u)] >> v) & 1U) {
        g.bits_.set(pair_index(n, u, v));
        ++g.m_;
      }
    }
  }
  return g;
}

Graph Graph::from_edge_list(int n, std::span<const Edge> edges) {
  check_order(n);
  std::array<VertexMask, kMaxOrder> rows{};
  for (auto [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n) {
      throw Error(Errc::InvalidVertex, "edge (" + std::to_string(u) + "," + std::to_string(v) +
                                           ") has an endpoint outside 0.." + std::to_string(n - 1));
    }
    if (u == v) throw Error(Errc::SelfLoop, "self-loop at vertex " + std::to_string(u));
    rows[static_cast<std::size_t>(u)] |= static_cast<VertexMask>(1U << v);
    rows[static_cast<std::size_t>(v)] |= static_cast<VertexMask>(1U << u);
  }
  return from_rows(n, rows);
}

Graph Graph::from_bits(int n, const PackedBits& bits) {
  check_order(n);
  std::array<VertexMask, kMaxOrder> rows{};
  int k = 0;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v, ++k) {
      if (bits.test(k)) {
        rows[static_cast<std::size_t>(u)] |= static_cast<VertexMask>(1U << v);
        rows[static_cast<std::size_t>(v)] |= static_cast<VertexMask>(1U << u);
      }
    }
  }
  return from_rows(n, rows);
}

Graph Graph::empty(int n) {
  check_order(n);
  return from_rows(n, {});
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(static_cast<std::size_t>(m_));
  for (int u = 0; u < n_; ++u) {
    for (int v = u + 1; v < n_; ++v) {
      if (has_edge(u, v)) out.emplace_back(u, v);
    }
  }
  return out;
}

Graph Graph::permuted(std::span<const int> new_label) const {
  if (static_cast<int>(new_label.size()) != n_) {
    throw Error(Errc::BadParam, "permutation size does not match graph order");
  }
  std::array<VertexMask, kMaxOrder> rows{};
  for (int u = 0; u < n_; ++u) {
    VertexMask src = rows_[static_cast<std::size_t>(u)];
    VertexMask dst = 0;
    while (src) {
      int v = std::countr_zero(src);
      src &= static_cast<VertexMask>(src - 1);
      dst |= static_cast<VertexMask>(1U << new_label[static_cast<std::size_t>(v)]);
    }
    rows[static_cast<std::size_t>(new_label[static_cast<std::size_t>(u)])] = dst;
  }
  return from_rows(n_, rows);
}

Graph Graph::complement() const {
  const auto all = static_cast<VertexMask>((1U << n_) - 1);
  std::array<VertexMask, kMaxOrder> rows{};
  for (int v = 0; v < n_; ++v) {
    rows[static_cast<std::size_t>(v)] =
        static_cast<VertexMask>(all & ~rows_[static_cast<std::size_t>(v)] & ~(1U << v));
  }
  return from_rows(n_, rows);
}

Graph Graph::with_vertex(VertexMask neighbours) const {
  check_order(n_ + 1);
  neighbours = static_cast<VertexMask>(neighbours & ((1U << n_) - 1));
  std::array<VertexMask, kMaxOrder> rows = rows_;
  rows[static_cast<std::size_t>(n_)] = neighbours;
  for (int v = 0; v < n_; ++v) {
    if ((neighbours >> v) & 1U) rows[static_cast<std::size_t>(v)] |= static_cast<VertexMask>(1U << n_);
  }
  return from_rows(n_ + 1, rows);
}

int degree(const Graph& g, int v) {
  check_vertex(g, v);
  return std::popcount(g.adjacency(v));
}

std::vector<int> neighbors(const Graph& g, int v) {
  check_vertex(g, v);
  std::vector<int> out;
  for (VertexMask mask = g.adjacency(v); mask; mask &= static_cast<VertexMask>(mask - 1)) {
    out.push_back(std::countr_zero(mask));
  }
  return out;
}

int min_degree(const Graph& g) noexcept {
  int best = g.order();
  for (int v = 0; v < g.order(); ++v) best = std::min(best, std::popcount(g.adjacency(v)));
  return best;
}

std::vector<std::vector<int>> connected_components(const Graph& g) {
  std::vector<std::vector<int>> out;
  VertexMask seen = 0;
  for (int root = 0; root < g.order(); ++root) {
    if ((seen >> root) & 1U) continue;
    auto comp = static_cast<VertexMask>(1U << root);
    VertexMask frontier = comp;
    while (frontier) {
      VertexMask next = 0;
      for (VertexMask f = frontier; f; f &= static_cast<VertexMask>(f - 1)) {
        next |= g.adjacency(std::countr_zero(f));
      }
      frontier = static_cast<VertexMask>(next & ~comp);
      comp |= next;
    }
    seen |= comp;
    std::vector<int> members;
    for (VertexMask c = comp; c; c &= static_cast<VertexMask>(c - 1)) members.push_back(std::countr_zero(c));
    out.push_back(std::move(members));
  }
  return out;
}

bool is_connected(const Graph& g) noexcept {
  const auto all = static_cast<VertexMask>((1U << g.order()) - 1);
  VertexMask comp = 1;
  VertexMask frontier = 1;
  while (frontier) {
    VertexMask next = 0;
    for (VertexMask f = frontier; f; f &= static_cast<VertexMask>(f - 1)) {
      next |= g.adjacency(std::countr_zero(f));
    }
    frontier = static_cast<VertexMask>(next & ~comp);
    comp |= next;
  }
  return comp == all;
}

namespace families {

Graph complete(int n) {
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  }
  return Graph::from_edge_list(n, edges);
}

Graph path(int n) {
  std::vector<Edge> edges;
  for (int v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  return Graph::from_edge_list(n, edges);
}

Graph cycle(int n) {
  std::vector<Edge> edges;
  for (int v = 0; v < n; ++v) edges.emplace_back(v, (v + 1) % n);
  return Graph::from_edge_list(n, edges);
}

Graph star(int n) {
  std::vector<Edge> edges;
  for (int v = 1; v < n; ++v) edges.emplace_back(0, v);
  return Graph::from_edge_list(n, edges);
}

}  // namespace families

}  // namespace samestats
