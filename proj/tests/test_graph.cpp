#include <algorithm>
#include <numeric>
#include <set>

#include "doctest.h"
#include "oracle.hpp"
#include "samestats/canonical.hpp"
#include "samestats/enumerate.hpp"
#include "samestats/error.hpp"
#include "samestats/graph.hpp"
#include "samestats/graph6.hpp"
#include "samestats/rng.hpp"

using namespace samestats;

namespace {

Graph random_graph(int n, double p, CounterRng& rng) {
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng.uniform01() < p) edges.emplace_back(u, v);
  return Graph::from_edge_list(n, edges);
}

std::vector<int> random_permutation(int n, CounterRng& rng) {
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  for (int i = n - 1; i > 0; --i) std::swap(p[i], p[rng.below(static_cast<std::uint64_t>(i + 1))]);
  return p;
}

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return Errc::IoError;
}

}  // namespace

TEST_CASE("edge lists are validated and normalised") {
  const std::vector<Edge> edges{{0, 1}, {1, 0}, {2, 1}};
  const Graph g = Graph::from_edge_list(3, edges);
  CHECK(g.edge_count() == 2);
  CHECK(g.has_edge(1, 2));
  CHECK(g.has_edge(2, 1));
  CHECK_FALSE(g.has_edge(0, 2));

  const std::vector<Edge> loop{{1, 1}};
  CHECK(code_of([&] { Graph::from_edge_list(3, loop); }) == Errc::SelfLoop);
  const std::vector<Edge> bad{{0, 3}};
  CHECK(code_of([&] { Graph::from_edge_list(3, bad); }) == Errc::InvalidVertex);
  CHECK(code_of([] { Graph::empty(13); }) == Errc::OrderTooLarge);
  CHECK(code_of([] { Graph::empty(0); }) == Errc::OrderTooSmall);
}

TEST_CASE("packed bits follow row-major pair order") {
  CHECK(pair_index(4, 0, 1) == 0);
  CHECK(pair_index(4, 0, 3) == 2);
  CHECK(pair_index(4, 1, 2) == 3);
  CHECK(pair_index(4, 2, 3) == 5);
  const std::vector<Edge> e{{2, 3}};
  const Graph g = Graph::from_edge_list(4, e);
  CHECK(g.bits().test(5));
  CHECK(g.bits().popcount() == 1);
}

TEST_CASE("families and components") {
  CHECK(families::complete(5).edge_count() == 10);
  CHECK(families::cycle(6).edge_count() == 6);
  CHECK(families::star(5).edge_count() == 4);
  CHECK(degree(families::star(5), 0) == 4);
  CHECK(families::path(4).edge_count() == 3);
  const std::vector<Edge> e{{0, 1}, {2, 3}};
  const Graph two = Graph::from_edge_list(5, e);
  CHECK(connected_components(two).size() == 3);
  CHECK_FALSE(is_connected(two));
  CHECK(is_connected(families::path(6)));
  CHECK(min_degree(families::cycle(5)) == 2);
}

TEST_CASE("complement and relabeling") {
  CounterRng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(11));
    const Graph g = random_graph(n, 0.4, rng);
    CHECK(g.complement().complement() == g);
    CHECK(g.complement().edge_count() == pair_count(n) - g.edge_count());
    const auto p = random_permutation(n, rng);
    const Graph h = g.permuted(p);
    CHECK(h.edge_count() == g.edge_count());
    for (auto [u, v] : g.edges()) CHECK(h.has_edge(p[u], p[v]));
  }
}

TEST_CASE("graph6 fixtures") {
  CHECK(encode_graph6(Graph::empty(1)) == "@");
  CHECK(encode_graph6(families::complete(3)) == "Bw");
  CHECK(encode_graph6(families::path(3)) == "Bg");
  CHECK(decode_graph6("Bw") == families::complete(3));
  CHECK(decode_graph6("Bg") == families::path(3));
  CHECK(decode_graph6("@") == Graph::empty(1));
  CHECK(decode_graph6(">>graph6<<Bw\n") == families::complete(3));
  // Widely published encodings.
  CHECK(encode_graph6(families::complete(4)) == "C~");
  CHECK(encode_graph6(families::cycle(5)) == "Dhc");
}

TEST_CASE("graph6 rejects malformed input") {
  CHECK(code_of([] { decode_graph6(""); }) == Errc::CodecError);
  CHECK(code_of([] { decode_graph6("B"); }) == Errc::CodecError);
  CHECK(code_of([] { decode_graph6("Bww"); }) == Errc::CodecError);
  CHECK(code_of([] { decode_graph6("B\x20"); }) == Errc::CodecError);
  CHECK(code_of([] { decode_graph6("L~~~~~~~~~~~"); }) == Errc::OrderTooLarge);
  CHECK(code_of([] { decode_graph6("~?@?"); }) == Errc::OrderTooLarge);
}

TEST_CASE("graph6 round-trips random graphs up to order 12") {
  CounterRng rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(12));
    const Graph g = random_graph(n, rng.uniform01(), rng);
    const std::string s = encode_graph6(g);
    CHECK(s.size() == 1 + static_cast<std::size_t>((pair_count(n) + 5) / 6));
    CHECK(decode_graph6(s) == g);
  }
}

TEST_CASE("certificates are invariant under relabeling") {
  CounterRng rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(12));
    const Graph g = random_graph(n, rng.uniform01(), rng);
    const Certificate c = certificate(g);
    for (int k = 0; k < 5; ++k) CHECK(certificate(g.permuted(random_permutation(n, rng))) == c);
    const Graph canon = canonical_form(g);
    CHECK(canon == decode(c));
    if (n <= 8) CHECK(oracle::isomorphic(oracle::matrix_of(g), oracle::matrix_of(canon)));
  }
}

TEST_CASE("canonical labeling order maps the graph onto its canonical form") {
  CounterRng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(10));
    const Graph g = random_graph(n, 0.5, rng);
    const CanonicalLabeling lab = canonical_labeling(g);
    std::vector<int> new_label(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) new_label[static_cast<std::size_t>(lab.order[static_cast<std::size_t>(i)])] = i;
    CHECK(g.permuted(new_label) == decode(lab.certificate));
  }
}

TEST_CASE("certificate equality matches brute-force isomorphism at n=6") {
  // All 2^15 labeled graphs on 6 vertices fall into 156 classes.
  std::set<Certificate> classes;
  std::vector<Graph> reps;
  for (unsigned mask = 0; mask < (1U << 15); ++mask) {
    std::vector<Edge> edges;
    int k = 0;
    for (int u = 0; u < 6; ++u)
      for (int v = u + 1; v < 6; ++v, ++k)
        if ((mask >> k) & 1U) edges.emplace_back(u, v);
    const Graph g = Graph::from_edge_list(6, edges);
    if (classes.insert(certificate(g)).second) reps.push_back(g);
  }
  CHECK(classes.size() == 156);
  // Distinct certificates must never be isomorphic.
  CounterRng rng(8);
  for (int trial = 0; trial < 300; ++trial) {
    const auto& a = reps[rng.below(reps.size())];
    const auto& b = reps[rng.below(reps.size())];
    const bool same = certificate(a) == certificate(b);
    CHECK(same == oracle::isomorphic(oracle::matrix_of(a), oracle::matrix_of(b)));
  }
}

TEST_CASE("hard regular cases are distinguished") {
  // C6 versus two disjoint triangles: both 2-regular on 6 vertices.
  const std::vector<Edge> triangles{{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}};
  CHECK_FALSE(are_isomorphic(families::cycle(6), Graph::from_edge_list(6, triangles)));
  // The Petersen graph against a relabeling of itself.
  const std::vector<Edge> petersen{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {0, 5}, {1, 6}, {2, 7},
                                   {3, 8}, {4, 9}, {5, 7}, {7, 9}, {9, 6}, {6, 8}, {8, 5}};
  const Graph p = Graph::from_edge_list(10, petersen);
  CounterRng rng(1);
  CHECK(are_isomorphic(p, p.permuted(random_permutation(10, rng))));
  // Petersen against the 3-regular prism C5 x K2.
  const std::vector<Edge> prism{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {5, 6}, {6, 7}, {7, 8},
                                {8, 9}, {9, 5}, {0, 5}, {1, 6}, {2, 7}, {3, 8}, {4, 9}};
  CHECK_FALSE(are_isomorphic(p, Graph::from_edge_list(10, prism)));
}
