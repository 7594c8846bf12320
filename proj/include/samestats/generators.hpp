#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "samestats/edge_histogram.hpp"
#include "samestats/graph.hpp"
#include "samestats/rng.hpp"
#include "samestats/stats.hpp"

namespace samestats {

enum class Model {
  ErPHalf,
  ErUniformP,
  ErPopulation,
  Ws,
  Ba,
  Geometric,
  GnmUniformE,
  GnmPopulationE,
};

std::string_view model_name(Model model) noexcept;
// Accepts the names printed by model_name plus "er" (= er-uniform).
Model parse_model(std::string_view name);
bool needs_histogram(Model model) noexcept;

// Values that override the per-draw sampling policy. For the G(n,M) models
// `m` is the edge count; for BA it is the attachment count.
struct ModelParams {
  std::optional<double> p;
  std::optional<int> k;
  std::optional<int> m;
  std::optional<double> radius;
};

struct GeneratorConfig {
  Model model = Model::ErPHalf;
  int n = 9;
  std::size_t count = 1;
  std::uint64_t seed = 0;
  ModelParams fixed;
};

struct Sample {
  GeneratorConfig config;
  std::vector<Graph> graphs;
  std::vector<StatVector> stats;
};

Graph gen_er(int n, double p, CounterRng& rng);
Graph gen_gnm(int n, int edges, CounterRng& rng);
// k is rounded down to even; each ring edge is rewired with probability p.
Graph gen_ws(int n, int k, double p, CounterRng& rng);
// Starts from m isolated vertices; edge count is m(n-m).
Graph gen_ba(int n, int m, CounterRng& rng);
Graph gen_geometric(int n, double radius, CounterRng& rng);

// Draw number `index` of the batch described by config, using the substream
// split from (seed, index).
Graph draw_graph(const GeneratorConfig& config, std::size_t index, const EdgeHistogram* histogram = nullptr);

Sample sample_batch(const GeneratorConfig& config, const EdgeHistogram* histogram = nullptr, unsigned workers = 0);

}  // namespace samestats
