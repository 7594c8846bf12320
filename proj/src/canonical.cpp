#include "samestats/canonical.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "samestats/error.hpp"

namespace samestats {

namespace {

// Ordered partition of the vertex set; each cell is a vertex mask.
struct Partition {
  std::array<VertexMask, kMaxOrder> cells{};
  int count = 0;
};

using Labeling = std::array<std::int8_t, kMaxOrder>;

// Individualization-refinement search. Every node holds an equitable ordered
// partition; leaves are discrete partitions, i.e. vertex orderings. The
// certificate is the minimum relabeled bit string over all leaves. Leaves
// that coincide reveal automorphisms, which prune sibling subtrees lying in
// the same orbit of the pointwise stabiliser of the current prefix.
class Canonizer {
 public:
  explicit Canonizer(const Graph& g) : g_(g), n_(g.order()) {}

  CanonicalLabeling run() {
    Partition root;
    root.cells[0] = static_cast<VertexMask>((1U << n_) - 1);
    root.count = 1;
    std::array<VertexMask, 4 * kMaxOrder> stack{};
    int top = 0;
    stack[top++] = root.cells[0];
    refine(root, stack, top);
    std::array<int, kMaxOrder> prefix{};
    search(root, 0, prefix);

    CanonicalLabeling out;
    out.certificate = Certificate{n_, best_bits_};
    for (int i = 0; i < n_; ++i) out.order[static_cast<std::size_t>(i)] = best_order_[static_cast<std::size_t>(i)];
    return out;
  }

 private:
  // Splits cells by neighbour counts into the popped splitter until the
  // partition is equitable. Subcells are ordered by ascending count, which
  // depends only on structure and so commutes with relabeling.
  template <std::size_t N>
  void refine(Partition& p, std::array<VertexMask, N>& stack, int& top) const {
    while (top > 0 && p.count < n_) {
      const VertexMask splitter = stack[static_cast<std::size_t>(--top)];
      for (int i = 0; i < p.count; ++i) {
        const VertexMask cell = p.cells[static_cast<std::size_t>(i)];
        if (std::has_single_bit(cell)) continue;
        std::array<VertexMask, kMaxOrder + 1> by_count{};
        int lo = kMaxOrder + 1;
        int hi = -1;
        for (VertexMask c = cell; c; c &= static_cast<VertexMask>(c - 1)) {
          const int v = std::countr_zero(c);
          const int k = std::popcount(static_cast<VertexMask>(g_.adjacency(v) & splitter));
          by_count[static_cast<std::size_t>(k)] |= static_cast<VertexMask>(1U << v);
          lo = std::min(lo, k);
          hi = std::max(hi, k);
        }
        if (lo == hi) continue;
        std::array<VertexMask, kMaxOrder> parts{};
        int np = 0;
        for (int k = lo; k <= hi; ++k) {
          if (by_count[static_cast<std::size_t>(k)]) parts[static_cast<std::size_t>(np++)] = by_count[static_cast<std::size_t>(k)];
        }
        for (int j = p.count - 1; j > i; --j) {
          p.cells[static_cast<std::size_t>(j + np - 1)] = p.cells[static_cast<std::size_t>(j)];
        }
        for (int t = 0; t < np; ++t) {
          p.cells[static_cast<std::size_t>(i + t)] = parts[static_cast<std::size_t>(t)];
          if (static_cast<std::size_t>(top) < N) stack[static_cast<std::size_t>(top++)] = parts[static_cast<std::size_t>(t)];
        }
        p.count += np - 1;
        i += np - 1;
      }
    }
  }

  void search(const Partition& p, int depth, std::array<int, kMaxOrder>& prefix) {
    if (p.count == n_) {
      leaf(p);
      return;
    }
    int target = 0;
    while (std::has_single_bit(p.cells[static_cast<std::size_t>(target)])) ++target;
    const VertexMask cell = p.cells[static_cast<std::size_t>(target)];

    VertexMask explored = 0;
    std::size_t orbits_from = 0;
    std::array<std::int8_t, kMaxOrder> orbit{};
    for (VertexMask c = cell; c; c &= static_cast<VertexMask>(c - 1)) {
      const int v = std::countr_zero(c);
      if (explored != 0 && !automorphisms_.empty()) {
        if (orbits_from != automorphisms_.size()) {
          compute_orbits(prefix, depth, orbit);
          orbits_from = automorphisms_.size();
        }
        bool pruned = false;
        for (VertexMask e = explored; e; e &= static_cast<VertexMask>(e - 1)) {
          if (orbit[static_cast<std::size_t>(std::countr_zero(e))] == orbit[static_cast<std::size_t>(v)]) {
            pruned = true;
            break;
          }
        }
        if (pruned) continue;
      }

      Partition child;
      child.count = p.count + 1;
      for (int i = 0; i < target; ++i) child.cells[static_cast<std::size_t>(i)] = p.cells[static_cast<std::size_t>(i)];
      child.cells[static_cast<std::size_t>(target)] = static_cast<VertexMask>(1U << v);
      child.cells[static_cast<std::size_t>(target + 1)] = static_cast<VertexMask>(cell & ~(1U << v));
      for (int i = target + 1; i < p.count; ++i) child.cells[static_cast<std::size_t>(i + 1)] = p.cells[static_cast<std::size_t>(i)];

      std::array<VertexMask, 4 * kMaxOrder> stack{};
      int top = 0;
      stack[top++] = static_cast<VertexMask>(1U << v);
      refine(child, stack, top);

      prefix[static_cast<std::size_t>(depth)] = v;
      search(child, depth + 1, prefix);
      explored |= static_cast<VertexMask>(1U << v);
    }
  }

  // Orbits of the group generated by known automorphisms fixing the
  // individualized prefix pointwise.
  void compute_orbits(const std::array<int, kMaxOrder>& prefix, int depth,
                      std::array<std::int8_t, kMaxOrder>& orbit) const {
    std::array<std::int8_t, kMaxOrder> parent{};
    std::iota(parent.begin(), parent.end(), std::int8_t{0});
    auto find = [&parent](int x) {
      while (parent[static_cast<std::size_t>(x)] != x) {
        parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
        x = parent[static_cast<std::size_t>(x)];
      }
      return x;
    };
    for (const Labeling& gamma : automorphisms_) {
      bool fixes = true;
      for (int d = 0; d < depth && fixes; ++d) {
        const int v = prefix[static_cast<std::size_t>(d)];
        fixes = gamma[static_cast<std::size_t>(v)] == v;
      }
      if (!fixes) continue;
      for (int v = 0; v < n_; ++v) {
        const int a = find(v);
        const int b = find(gamma[static_cast<std::size_t>(v)]);
        if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = static_cast<std::int8_t>(std::min(a, b));
      }
    }
    for (int v = 0; v < n_; ++v) orbit[static_cast<std::size_t>(v)] = static_cast<std::int8_t>(find(v));
  }

  void leaf(const Partition& p) {
    Labeling order{};
    for (int i = 0; i < n_; ++i) {
      order[static_cast<std::size_t>(i)] = static_cast<std::int8_t>(std::countr_zero(p.cells[static_cast<std::size_t>(i)]));
    }
    PackedBits bits;
    int k = 0;
    for (int i = 0; i < n_; ++i) {
      const VertexMask row = g_.adjacency(order[static_cast<std::size_t>(i)]);
      for (int j = i + 1; j < n_; ++j, ++k) {
        if ((row >> order[static_cast<std::size_t>(j)]) & 1U) bits.set(k);
      }
    }

    if (!have_leaf_) {
      have_leaf_ = true;
      first_bits_ = best_bits_ = bits;
      first_order_ = best_order_ = order;
      return;
    }
    if (bits == first_bits_) {
      record_automorphism(first_order_, order);
    } else if (bits == best_bits_) {
      record_automorphism(best_order_, order);
    } else if (bits < best_bits_) {
      best_bits_ = bits;
      best_order_ = order;
    }
  }

  void record_automorphism(const Labeling& from, const Labeling& to) {
    Labeling gamma{};
    for (int i = 0; i < n_; ++i) gamma[static_cast<std::size_t>(from[static_cast<std::size_t>(i)])] = to[static_cast<std::size_t>(i)];
    automorphisms_.push_back(gamma);
  }

  const Graph& g_;
  int n_;
  bool have_leaf_ = false;
  PackedBits first_bits_;
  PackedBits best_bits_;
  Labeling first_order_{};
  Labeling best_order_{};
  std::vector<Labeling> automorphisms_;
};

}  // namespace

CanonicalLabeling canonical_labeling(const Graph& g) {
  if (g.order() > kMaxOrder) {
    throw Error(Errc::OrderTooLarge, "certificate requested for order " + std::to_string(g.order()));
  }
  return Canonizer(g).run();
}

Certificate certificate(const Graph& g) { return canonical_labeling(g).certificate; }

Graph decode(const Certificate& c) { return Graph::from_bits(c.n, c.bits); }

Graph canonical_form(const Graph& g) { return decode(certificate(g)); }

bool are_isomorphic(const Graph& g, const Graph& h) {
  if (g.order() != h.order() || g.edge_count() != h.edge_count()) return false;
  return certificate(g) == certificate(h);
}

}  // namespace samestats
