#include <cmath>
#include <map>
#include <set>

#include "doctest.h"
#include "samestats/atlas.hpp"
#include "samestats/error.hpp"
#include "samestats/generators.hpp"

using namespace samestats;

namespace {

// Pearson chi-squared statistic of observed counts against expected counts.
double chi_squared(const std::vector<double>& observed, const std::vector<double>& expected) {
  double x = 0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double d = observed[i] - expected[i];
    x += d * d / expected[i];
  }
  return x;
}

double binomial_pmf(int n, int k, double p) {
  return std::exp(std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1)) * std::pow(p, k) *
         std::pow(1 - p, n - k);
}

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::IoError;
}

std::set<int> edge_counts(const GeneratorConfig& config) {
  const Sample s = sample_batch(config);
  std::set<int> out;
  for (const auto& g : s.graphs) out.insert(g.edge_count());
  return out;
}

}  // namespace

TEST_CASE("ER extremes") {
  CounterRng rng(1);
  CHECK(gen_er(9, 1.0, rng) == families::complete(9));
  CHECK(gen_er(9, 0.0, rng) == Graph::empty(9));
  CHECK(code_of([&] { gen_er(9, 1.5, rng); }) == Errc::BadParam);
  CHECK(code_of([&] { gen_er(13, 0.5, rng); }) == Errc::BadParam);
}

TEST_CASE("ER p=1/2 edge counts are binomial") {
  GeneratorConfig c;
  c.model = Model::ErPHalf;
  c.n = 5;
  c.count = 20000;
  c.seed = 42;
  const Sample s = sample_batch(c);
  std::vector<double> observed(11, 0.0);
  std::vector<double> expected(11, 0.0);
  for (const auto& g : s.graphs) observed[static_cast<std::size_t>(g.edge_count())] += 1;
  for (int k = 0; k <= 10; ++k) expected[static_cast<std::size_t>(k)] = c.count * binomial_pmf(10, k, 0.5);
  // 99.9% quantile of chi-squared with 10 degrees of freedom.
  CHECK(chi_squared(observed, expected) < 29.59);
}

TEST_CASE("G(n,M) places exactly M edges uniformly") {
  CounterRng rng(9);
  for (int m = 0; m <= 15; ++m) CHECK(gen_gnm(6, m, rng).edge_count() == m);
  CHECK(code_of([&] { gen_gnm(6, 16, rng); }) == Errc::BadParam);
  std::vector<double> observed(15, 0.0);
  for (int i = 0; i < 15000; ++i) {
    const Graph g = gen_gnm(6, 1, rng);
    const auto [u, v] = g.edges().front();
    observed[static_cast<std::size_t>(pair_index(6, u, v))] += 1;
  }
  CHECK(chi_squared(observed, std::vector<double>(15, 1000.0)) < 36.12);  // df 14
}

TEST_CASE("uniform edge strategy draws edge counts uniformly") {
  GeneratorConfig c;
  c.model = Model::GnmUniformE;
  c.n = 5;
  c.count = 11000;
  c.seed = 3;
  const Sample s = sample_batch(c);
  std::vector<double> observed(11, 0.0);
  for (const auto& g : s.graphs) observed[static_cast<std::size_t>(g.edge_count())] += 1;
  CHECK(chi_squared(observed, std::vector<double>(11, 1000.0)) < 29.59);
}

TEST_CASE("population edge strategy follows the atlas histogram") {
  const Atlas a = make_atlas(6);
  GeneratorConfig c;
  c.model = Model::GnmPopulationE;
  c.n = 6;
  c.count = 15600;
  c.seed = 5;
  const Sample s = sample_batch(c, &a.histogram);
  std::vector<double> observed(16, 0.0);
  std::vector<double> expected(16, 0.0);
  for (const auto& g : s.graphs) observed[static_cast<std::size_t>(g.edge_count())] += 1;
  for (std::size_t m = 0; m < 16; ++m) expected[m] = 100.0 * static_cast<double>(a.histogram.counts[m]);
  CHECK(chi_squared(observed, expected) < 37.70);  // df 15

  c.model = Model::ErPopulation;
  CHECK(code_of([&] { sample_batch(c); }) == Errc::MissingHistogram);
}

TEST_CASE("Watts-Strogatz keeps the ring edge count") {
  CounterRng rng(2);
  CHECK(gen_ws(9, 4, 0.0, rng).edge_count() == 18);
  const Graph ring = gen_ws(8, 2, 0.0, rng);
  CHECK(ring == families::cycle(8));
  for (int k : {2, 4, 6, 8}) {
    for (int i = 0; i < 200; ++i) {
      const Graph g = gen_ws(9, k, rng.uniform01(), rng);
      CHECK(g.edge_count() == 9 * k / 2);
    }
  }
  CHECK(code_of([&] { gen_ws(9, 9, 0.5, rng); }) == Errc::BadParam);
  CHECK(code_of([&] { gen_ws(9, 1, 0.5, rng); }) == Errc::BadParam);

  GeneratorConfig c;
  c.model = Model::Ws;
  c.n = 9;
  c.count = 1000;
  CHECK(edge_counts(c) == std::set<int>{9, 18, 27, 36});
}

TEST_CASE("Barabasi-Albert edge counts") {
  CounterRng rng(6);
  for (int m = 1; m <= 8; ++m) {
    for (int i = 0; i < 50; ++i) CHECK(gen_ba(9, m, rng).edge_count() == m * (9 - m));
  }
  // With m = n-1 the single new vertex attaches to all m isolated seeds.
  const Graph star = gen_ba(9, 8, rng);
  CHECK(degree(star, 8) == 8);
  CHECK(star.edge_count() == 8);
  CHECK(code_of([&] { gen_ba(9, 9, rng); }) == Errc::BadParam);
  CHECK(code_of([&] { gen_ba(9, 0, rng); }) == Errc::BadParam);

  GeneratorConfig c;
  c.model = Model::Ba;
  c.n = 9;
  c.count = 1000;
  CHECK(edge_counts(c) == std::set<int>{8, 14, 18, 20});
}

TEST_CASE("random geometric graphs") {
  CounterRng rng(7);
  CHECK(gen_geometric(9, 1.5, rng) == families::complete(9));
  CHECK(gen_geometric(9, 0.0, rng).edge_count() == 0);
  CHECK(code_of([&] { gen_geometric(9, -0.1, rng); }) == Errc::BadParam);
}

TEST_CASE("draws are reproducible and independent of batch shape") {
  GeneratorConfig c;
  c.model = Model::ErUniformP;
  c.n = 9;
  c.count = 500;
  c.seed = 1234;
  const Sample a = sample_batch(c, nullptr, 1);
  const Sample b = sample_batch(c, nullptr, 4);
  CHECK(a.graphs == b.graphs);
  c.count = 100;
  const Sample prefix = sample_batch(c, nullptr, 3);
  for (std::size_t i = 0; i < 100; ++i) CHECK(prefix.graphs[i] == a.graphs[i]);
  c.seed = 1235;
  CHECK(sample_batch(c).graphs != prefix.graphs);
  CHECK(draw_graph(c, 17) == draw_graph(c, 17));
}

TEST_CASE("fixed parameters override the per-draw policy") {
  GeneratorConfig c;
  c.model = Model::ErUniformP;
  c.n = 9;
  c.seed = 7;
  c.fixed.p = 1.0;
  CHECK(draw_graph(c, 0) == families::complete(9));
  c.model = Model::GnmUniformE;
  c.fixed = {};
  c.fixed.m = 12;
  CHECK(draw_graph(c, 3).edge_count() == 12);
  c.model = Model::Ws;
  c.fixed = {};
  c.fixed.k = 4;
  CHECK(draw_graph(c, 5).edge_count() == 18);
}

TEST_CASE("model names") {
  CHECK(parse_model("er") == Model::ErUniformP);
  CHECK(parse_model("ER_HALF") == Model::ErPHalf);
  CHECK(parse_model("gnm-population") == Model::GnmPopulationE);
  CHECK(model_name(Model::Geometric) == "geometric");
  CHECK(code_of([] { parse_model("kronecker"); }) == Errc::BadParam);
}

TEST_CASE("batch validation") {
  GeneratorConfig c;
  c.count = 0;
  CHECK(code_of([&] { sample_batch(c); }) == Errc::BadParam);
  c.count = 1;
  c.n = 1;
  CHECK(code_of([&] { sample_batch(c); }) == Errc::BadParam);
}
