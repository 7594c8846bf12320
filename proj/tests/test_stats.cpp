#include <cmath>
#include <numeric>

#include "doctest.h"
#include "oracle.hpp"
#include "samestats/enumerate.hpp"
#include "samestats/error.hpp"
#include "samestats/generators.hpp"
#include "samestats/stats.hpp"

using namespace samestats;

namespace {

Graph from(int n, std::vector<Edge> edges) { return Graph::from_edge_list(n, edges); }

void check_against_oracle(const Graph& g) {
  const auto a = oracle::matrix_of(g);
  const StatVector sv = stat_vector(g);
  CHECK(sv.n == g.order());
  CHECK(sv.m == oracle::edge_count(a));
  CHECK(sv.triangles == oracle::triangles(a));
  CHECK(sv.girth == oracle::girth(a));
  CHECK(sv.diam == oracle::diameter(a));
  CHECK(sv.cv == oracle::node_connectivity(a));
  CHECK(sv.ce == oracle::edge_connectivity(a));
  CHECK(sv.acc == doctest::Approx(oracle::acc(a)).epsilon(1e-12));
  CHECK(sv.gcc == doctest::Approx(oracle::gcc(a)).epsilon(1e-12));
  CHECK(std::abs(sv.scc - oracle::scc(a)) <= 1e-9);
  CHECK(std::abs(sv.apl - oracle::apl(a)) <= 1e-12);
  const int n = g.order();
  CHECK(sv.den == 2.0 * sv.m / (n * (n - 1)));
  CHECK(sv.rt == sv.triangles / (n * (n - 1) / 2.0));
  const auto r = oracle::assortativity(a);
  REQUIRE(sv.r.has_value() == r.has_value());
  if (r) CHECK(std::abs(*sv.r - *r) <= 1e-9);
}

}  // namespace

TEST_CASE("triangles and girth") {
  CHECK(count_triangles(families::complete(4)) == 4);
  CHECK(count_triangles(families::cycle(5)) == 0);
  CHECK(girth(families::complete(3)) == 3);
  CHECK(girth(families::cycle(5)) == 5);
  CHECK(girth(families::cycle(12)) == 12);
  CHECK(girth(families::path(7)) == 0);
  CHECK(girth(families::star(6)) == 0);
  // Even cycle hanging off a tree.
  CHECK(girth(from(7, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 2}, {0, 6}})) == 4);
}

TEST_CASE("clustering coefficients") {
  CHECK(local_clustering(families::complete(3), 1) == 1.0);
  CHECK(local_clustering(families::star(5), 0) == 0.0);
  CHECK(local_clustering(families::star(5), 3) == 0.0);
  CHECK(acc(families::complete(4)) == 1.0);
  CHECK(acc(families::path(3)) == 0.0);
  CHECK(acc(families::cycle(5)) == 0.0);
  CHECK(gcc(families::path(3)) == 0.0);
  CHECK(gcc(families::complete(4)) == 1.0);
  CHECK_THROWS_AS(local_clustering(families::path(3), 3), Error);
}

TEST_CASE("square clustering") {
  CHECK(scc(families::cycle(4)) == 1.0);
  CHECK(scc(families::complete(3)) == 0.0);
  CHECK(scc(families::complete(2)) == 0.0);
  // Complete bipartite K_{2,3}: every neighbour pair closes squares with no
  // remaining degree, so each vertex scores 1.
  CHECK(scc(from(5, {{0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}})) == 1.0);
}

TEST_CASE("path length and diameter use finite pairs") {
  CHECK(apl(families::complete(6)) == 1.0);
  CHECK(apl(families::path(3)) == doctest::Approx(4.0 / 3.0));
  CHECK(apl(from(3, {{0, 1}})) == 1.0);
  CHECK(apl(Graph::empty(4)) == 0.0);
  CHECK(diameter(families::path(5)) == 4);
  CHECK(diameter(families::complete(9)) == 1);
  CHECK(diameter(from(4, {{0, 1}, {2, 3}})) == 1);
  CHECK(diameter(Graph::empty(3)) == 0);
}

TEST_CASE("assortativity") {
  for (int n = 3; n <= 12; ++n) CHECK(*assortativity(families::star(n)) == doctest::Approx(-1.0));
  CHECK_FALSE(assortativity(families::cycle(5)).has_value());
  CHECK(*assortativity(families::path(4)) == doctest::Approx(-0.5));
  try {
    (void)assortativity(Graph::empty(4));
    FAIL("expected NoEdges");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NoEdges);
  }
}

TEST_CASE("density") {
  CHECK(density(families::complete(9)) == 1.0);
  CHECK(density(Graph::empty(5)) == 0.0);
  CHECK(density(from(12, {{0, 1}})) == 2.0 / 132.0);
  try {
    (void)density(Graph::empty(1));
    FAIL("expected OrderTooSmall");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::OrderTooSmall);
  }
}

TEST_CASE("connectivity") {
  CHECK(node_connectivity(families::cycle(5)) == 2);
  CHECK(node_connectivity(families::complete(5)) == 4);
  CHECK(node_connectivity(from(3, {{0, 1}})) == 0);
  CHECK(node_connectivity(Graph::empty(1)) == 0);
  CHECK(edge_connectivity(families::path(6)) == 1);
  CHECK(edge_connectivity(families::star(7)) == 1);
  CHECK(edge_connectivity(families::complete(4)) == 3);
  CHECK(edge_connectivity(families::cycle(6)) == 2);
  // Two K4 sharing one vertex: a cut vertex but three edge-disjoint paths.
  const Graph bowtie = from(7, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3},
                                {3, 4}, {3, 5}, {3, 6}, {4, 5}, {4, 6}, {5, 6}});
  CHECK(node_connectivity(bowtie) == 1);
  CHECK(edge_connectivity(bowtie) == 3);
}

TEST_CASE("stat vector examples") {
  const StatVector k9 = stat_vector(families::complete(9));
  CHECK(k9.rt == doctest::Approx(7.0 / 3.0));
  CHECK(k9.rt_cubic() == 1.0);
  const StatVector p3 = stat_vector(families::path(3));
  CHECK(p3.m == 2);
  CHECK(p3.triangles == 0);
  CHECK(p3.gcc == 0.0);
  CHECK(p3.apl == doctest::Approx(4.0 / 3.0));
  CHECK(p3.diam == 2);
  CHECK(p3.den == doctest::Approx(2.0 / 3.0));
  CHECK(p3.cv == 1);
  CHECK(p3.ce == 1);
  CHECK(std::isnan(stat_vector(Graph::empty(3)).value(Stat::R)));
  CHECK_THROWS_AS(stat_vector(Graph::empty(1)), Error);
}

TEST_CASE("every graph on six vertices matches the brute-force oracle") {
  const auto graphs = enumerate_all(6);
  REQUIRE(graphs.size() == 156);
  for (const auto& g : graphs) check_against_oracle(g);
}

TEST_CASE("random graphs up to order 8 match the brute-force oracle") {
  CounterRng rng(2024);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(7));
    check_against_oracle(gen_er(n, rng.uniform01(), rng));
  }
}

TEST_CASE("Whitney inequality over all graphs on seven vertices") {
  for (const auto& g : enumerate_all(7)) {
    const StatVector sv = stat_vector(g);
    CHECK(sv.cv <= sv.ce);
    CHECK(sv.ce <= min_degree(g));
    CHECK(sv.diam <= 6);
    if (sv.m >= 1) CHECK(sv.apl <= sv.diam);
    CHECK(sv.rt <= 5.0 / 3.0 + 1e-12);
  }
}

TEST_CASE("clustering agrees on complete and triangle-free graphs") {
  for (int n = 5; n <= 8; ++n) {
    for (const auto& g : enumerate_all(n)) {
      if (count_triangles(g) == 0) {
        CHECK(acc(g) == 0.0);
        CHECK(gcc(g) == 0.0);
      }
    }
    CHECK(acc(families::complete(n)) == 1.0);
    CHECK(gcc(families::complete(n)) == 1.0);
  }
}

TEST_CASE("statistics are invariant under relabeling") {
  CounterRng rng(77);
  for (int i = 0; i < 50; ++i) {
    const Graph g = gen_er(8, rng.uniform01(), rng);
    const StatVector sv = stat_vector(g);
    for (int k = 0; k < 100; ++k) {
      std::vector<int> p(8);
      std::iota(p.begin(), p.end(), 0);
      for (int j = 7; j > 0; --j) std::swap(p[j], p[rng.below(static_cast<std::uint64_t>(j + 1))]);
      const StatVector other = stat_vector(g.permuted(p));
      CHECK(other.m == sv.m);
      CHECK(other.triangles == sv.triangles);
      CHECK(other.cv == sv.cv);
      CHECK(other.ce == sv.ce);
      CHECK(other.diam == sv.diam);
      CHECK(other.apl == doctest::Approx(sv.apl).epsilon(1e-12));
      CHECK(other.scc == doctest::Approx(sv.scc).epsilon(1e-12));
      CHECK(other.acc == doctest::Approx(sv.acc).epsilon(1e-12));
    }
  }
}

TEST_CASE("assortativity stays in [-1,1] on random graphs") {
  CounterRng rng(4);
  int defined = 0;
  for (int i = 0; i < 10000; ++i) {
    const Graph g = gen_er(9, 0.5, rng);
    if (g.edge_count() == 0) continue;
    if (const auto r = assortativity(g)) {
      ++defined;
      CHECK(*r >= -1.0);
      CHECK(*r <= 1.0);
    }
  }
  CHECK(defined > 9000);
}

TEST_CASE("normalization") {
  StatVector sv = stat_vector(families::path(9));
  CHECK(sv.diam == 8);
  const NormalizedStatVector nv = normalize(sv, 2 * sv.apl);
  CHECK(nv[5] == 1.0);  // diam / (n-1)
  CHECK(nv[3] == 0.5);  // apl / apl_ref
  CHECK(nv[8] == doctest::Approx(1.0 / 8.0));
  CHECK(nv[0] == sv.acc);
  CHECK(nv[7] == sv.rt);
  sv.diam = 4;
  CHECK(normalize(sv, 1.0)[5] == 0.5);
  CHECK_THROWS_AS(normalize(sv, 0.0), Error);
  CHECK(std::isnan(normalize(stat_vector(families::cycle(9)), 1.0)[4]));
}

TEST_CASE("statistic names") {
  CHECK(parse_stat("GCC") == Stat::Gcc);
  CHECK(parse_stat("assortativity") == Stat::R);
  CHECK(parse_stat("edges") == Stat::M);
  CHECK(stat_name(Stat::Ce) == "ce");
  CHECK(is_integer_stat(Stat::Girth));
  CHECK_FALSE(is_integer_stat(Stat::Apl));
  try {
    (void)parse_stat("betweenness");
    FAIL("expected UnknownStatistic");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::UnknownStatistic);
  }
}
