#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace samestats {

inline constexpr int kMaxOrder = 12;

using VertexMask = std::uint16_t;
using Edge = std::pair<int, int>;

// Number of unordered vertex pairs, C(n,2).
constexpr int pair_count(int n) noexcept { return n * (n - 1) / 2; }

// Row-major position of the pair (u,v), u < v, in the upper triangle:
// (0,1),(0,2),...,(0,n-1),(1,2),...
constexpr int pair_index(int n, int u, int v) noexcept {
  return u * n - u * (u + 1) / 2 + (v - u - 1);
}

// Fixed-capacity bit string holding the upper triangle of an adjacency
// matrix. Bit 0 is the most significant, so comparing two strings with the
// defaulted ordering is lexicographic comparison of the bit sequences.
class PackedBits {
 public:
  static constexpr int kCapacity = 128;

  bool test(int k) const noexcept {
    return (words_[static_cast<std::size_t>(k >> 6)] >> (63 - (k & 63))) & 1U;
  }
  void set(int k) noexcept {
    words_[static_cast<std::size_t>(k >> 6)] |= std::uint64_t{1} << (63 - (k & 63));
  }
  int popcount() const noexcept;

  const std::array<std::uint64_t, 2>& words() const noexcept { return words_; }
  std::size_t hash() const noexcept;

  friend auto operator<=>(const PackedBits&, const PackedBits&) = default;

 private:
  std::array<std::uint64_t, 2> words_{};
};

// Immutable simple undirected graph on vertices 0..n-1 (1 <= n <= 12).
// The packed upper triangle is the identity of the graph; per-vertex
// neighbour masks are cached alongside for the statistics kernels.
class Graph {
 public:
  static Graph from_edge_list(int n, std::span<const Edge> edges);
  static Graph from_bits(int n, const PackedBits& bits);
  static Graph empty(int n);

  int order() const noexcept { return n_; }
  int edge_count() const noexcept { return m_; }
  const PackedBits& bits() const noexcept { return bits_; }

  // Unchecked neighbour mask of v.
  VertexMask adjacency(int v) const noexcept { return rows_[static_cast<std::size_t>(v)]; }
  bool has_edge(int u, int v) const noexcept { return (rows_[static_cast<std::size_t>(u)] >> v) & 1U; }

  std::vector<Edge> edges() const;

  // Relabels old vertex v as new_label[v].
  Graph permuted(std::span<const int> new_label) const;
  Graph complement() const;
  // Adds vertex n joined to every vertex in neighbours.
  Graph with_vertex(VertexMask neighbours) const;

  friend bool operator==(const Graph& a, const Graph& b) noexcept {
    return a.n_ == b.n_ && a.bits_ == b.bits_;
  }

 private:
  static Graph from_rows(int n, const std::array<VertexMask, kMaxOrder>& rows);

  int n_ = 0;
  int m_ = 0;
  PackedBits bits_;
  std::array<VertexMask, kMaxOrder> rows_{};
};

int degree(const Graph& g, int v);
std::vector<int> neighbors(const Graph& g, int v);
int min_degree(const Graph& g) noexcept;
std::vector<std::vector<int>> connected_components(const Graph& g);
bool is_connected(const Graph& g) noexcept;

// Small named families used across tests, generators and demos.
namespace families {
Graph complete(int n);
Graph path(int n);
Graph cycle(int n);
Graph star(int n);  // vertex 0 is the centre
}  // namespace families

}  // namespace samestats
