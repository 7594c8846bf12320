#pragma once

#include <array>
#include <compare>
#include <cstddef>

#include "samestats/graph.hpp"

namespace samestats {

// Isomorphism-invariant encoding of a graph: the smallest packed upper
// triangle among the labelings reached by the canonical refinement search.
struct Certificate {
  int n = 0;
  PackedBits bits;

  friend auto operator<=>(const Certificate&, const Certificate&) = default;
};

struct CertificateHash {
  std::size_t operator()(const Certificate& c) const noexcept {
    return c.bits.hash() ^ static_cast<std::size_t>(c.n);
  }
};

struct CanonicalLabeling {
  Certificate certificate;
  // order[i] is the original vertex placed at canonical position i.
  std::array<int, kMaxOrder> order{};
};

CanonicalLabeling canonical_labeling(const Graph& g);
Certificate certificate(const Graph& g);
Graph decode(const Certificate& c);
// Relabeled copy of g in canonical form; equal to decode(certificate(g)).
Graph canonical_form(const Graph& g);
bool are_isomorphic(const Graph& g, const Graph& h);

}  // namespace samestats
