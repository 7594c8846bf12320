#include "samestats/generators.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <numeric>

#include "samestats/error.hpp"
#include "samestats/parallel.hpp"

namespace samestats {

namespace {

constexpr std::array<std::pair<Model, std::string_view>, 8> kModelNames = {{
    {Model::ErPHalf, "er-half"},
    {Model::ErUniformP, "er-uniform"},
    {Model::ErPopulation, "er-population"},
    {Model::Ws, "ws"},
    {Model::Ba, "ba"},
    {Model::Geometric, "geometric"},
    {Model::GnmUniformE, "gnm-uniform"},
    {Model::GnmPopulationE, "gnm-population"},
}};

void check_order(int n) {
  if (n < 2 || n > kMaxOrder) throw Error(Errc::BadParam, "generator order must be in 2..12, got " + std::to_string(n));
}

void check_probability(double p, std::string_view what) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(Errc::BadParam, std::string(what) + " must lie in [0,1]");
}

// Mutable adjacency used while a generator is running.
struct Builder {
  int n;
  std::array<VertexMask, kMaxOrder> rows{};

  bool has(int u, int v) const { return (rows[static_cast<std::size_t>(u)] >> v) & 1U; }
  void add(int u, int v) {
    rows[static_cast<std::size_t>(u)] |= static_cast<VertexMask>(1U << v);
    rows[static_cast<std::size_t>(v)] |= static_cast<VertexMask>(1U << u);
  }
  void remove(int u, int v) {
    rows[static_cast<std::size_t>(u)] &= static_cast<VertexMask>(~(1U << v));
    rows[static_cast<std::size_t>(v)] &= static_cast<VertexMask>(~(1U << u));
  }
  int degree(int u) const { return std::popcount(rows[static_cast<std::size_t>(u)]); }

  Graph build() const {
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        if (has(u, v)) edges.emplace_back(u, v);
      }
    }
    return Graph::from_edge_list(n, edges);
  }
};

int sample_histogram(const EdgeHistogram& hist, CounterRng& rng) {
  const std::uint64_t total = hist.total();
  std::uint64_t pick = rng.below(total);
  for (std::size_t m = 0; m < hist.counts.size(); ++m) {
    if (pick < hist.counts[m]) return static_cast<int>(m);
    pick -= hist.counts[m];
  }
  return static_cast<int>(hist.counts.size()) - 1;
}

}  // namespace

std::string_view model_name(Model model) noexcept {
  for (auto [m, name] : kModelNames) {
    if (m == model) return name;
  }
  return "?";
}

Model parse_model(std::string_view name) {
  std::string lower;
  for (char c : name) lower.push_back(c == '_' ? '-' : static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  for (auto [m, known] : kModelNames) {
    if (known == lower) return m;
  }
  if (lower == "er") return Model::ErUniformP;
  if (lower == "gnm") return Model::GnmUniformE;
  throw Error(Errc::BadParam, "unknown generator model '" + std::string(name) + "'");
}

bool needs_histogram(Model model) noexcept {
  return model == Model::ErPopulation || model == Model::GnmPopulationE;
}

Graph gen_er(int n, double p, CounterRng& rng) {
  check_order(n);
  check_probability(p, "edge probability");
  Builder b{n};
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (rng.uniform01() < p) b.add(u, v);
    }
  }
  return b.build();
}

Graph gen_gnm(int n, int edges, CounterRng& rng) {
  check_order(n);
  const int pairs = pair_count(n);
  if (edges < 0 || edges > pairs) {
    throw Error(Errc::BadParam, "edge count " + std::to_string(edges) + " outside 0.." + std::to_string(pairs));
  }
  std::vector<int> slots(static_cast<std::size_t>(pairs));
  std::iota(slots.begin(), slots.end(), 0);
  PackedBits bits;
  for (int i = 0; i < edges; ++i) {
    const auto j = static_cast<std::size_t>(i) + rng.below(static_cast<std::uint64_t>(pairs - i));
    std::swap(slots[static_cast<std::size_t>(i)], slots[j]);
    bits.set(slots[static_cast<std::size_t>(i)]);
  }
  return Graph::from_bits(n, bits);
}

Graph gen_ws(int n, int k, double p, CounterRng& rng) {
  check_order(n);
  check_probability(p, "rewiring probability");
  if (k < 2 || k > n - 1) throw Error(Errc::BadParam, "ring degree k must be in 2..n-1, got " + std::to_string(k));
  const int half = k / 2;
  Builder b{n};
  for (int j = 1; j <= half; ++j) {
    for (int u = 0; u < n; ++u) b.add(u, (u + j) % n);
  }
  for (int j = 1; j <= half; ++j) {
    for (int u = 0; u < n; ++u) {
      if (rng.uniform01() >= p) continue;
      if (b.degree(u) >= n - 1) continue;
      const int v = (u + j) % n;
      int w = 0;
      do {
        w = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
      } while (w == u || b.has(u, w));
      b.remove(u, v);
      b.add(u, w);
    }
  }
  return b.build();
}

Graph gen_ba(int n, int m, CounterRng& rng) {
  check_order(n);
  if (m < 1 || m > n - 1) throw Error(Errc::BadParam, "attachment count m must be in 1..n-1, got " + std::to_string(m));
  Builder b{n};
  std::vector<int> targets(static_cast<std::size_t>(m));
  std::iota(targets.begin(), targets.end(), 0);
  // Each vertex appears once per incident edge, so uniform picks from this
  // list are degree-proportional.
  std::vector<int> endpoints;
  for (int source = m; source < n; ++source) {
    for (int t : targets) b.add(source, t);
    endpoints.insert(endpoints.end(), targets.begin(), targets.end());
    endpoints.insert(endpoints.end(), static_cast<std::size_t>(m), source);
    if (source + 1 == n) break;
    VertexMask chosen = 0;
    targets.clear();
    while (static_cast<int>(targets.size()) < m) {
      const int x = endpoints[rng.below(endpoints.size())];
      if ((chosen >> x) & 1U) continue;
      chosen |= static_cast<VertexMask>(1U << x);
      targets.push_back(x);
    }
  }
  return b.build();
}

Graph gen_geometric(int n, double radius, CounterRng& rng) {
  check_order(n);
  if (!(radius >= 0.0)) throw Error(Errc::BadParam, "radius must be non-negative");
  std::array<double, kMaxOrder> x{};
  std::array<double, kMaxOrder> y{};
  for (int v = 0; v < n; ++v) {
    x[static_cast<std::size_t>(v)] = rng.uniform01();
    y[static_cast<std::size_t>(v)] = rng.uniform01();
  }
  Builder b{n};
  const double r2 = radius * radius;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      const double dx = x[static_cast<std::size_t>(u)] - x[static_cast<std::size_t>(v)];
      const double dy = y[static_cast<std::size_t>(u)] - y[static_cast<std::size_t>(v)];
      if (dx * dx + dy * dy <= r2) b.add(u, v);
    }
  }
  return b.build();
}

Graph draw_graph(const GeneratorConfig& config, std::size_t index, const EdgeHistogram* histogram) {
  const int n = config.n;
  check_order(n);
  const ModelParams& fixed = config.fixed;
  CounterRng rng = CounterRng(config.seed).split(index);
  switch (config.model) {
    case Model::ErPHalf:
      return gen_er(n, fixed.p.value_or(0.5), rng);
    case Model::ErUniformP: {
      const double p = fixed.p ? *fixed.p : rng.uniform01();
      return gen_er(n, p, rng);
    }
    case Model::ErPopulation:
    case Model::GnmPopulationE: {
      if (histogram == nullptr) throw Error(Errc::MissingHistogram, "population edge strategy needs the atlas edge histogram");
      if (histogram->n != n || histogram->total() == 0) throw Error(Errc::BadParam, "edge histogram does not match order");
      const int edges = fixed.m ? *fixed.m : sample_histogram(*histogram, rng);
      return gen_gnm(n, edges, rng);
    }
    case Model::GnmUniformE: {
      const int edges = fixed.m ? *fixed.m : static_cast<int>(rng.below(static_cast<std::uint64_t>(pair_count(n) + 1)));
      return gen_gnm(n, edges, rng);
    }
    case Model::Ws: {
      const int valid_k = (n - 1) / 2;  // number of even values in 2..n-1
      if (valid_k == 0) throw Error(Errc::BadParam, "WS needs n >= 3");
      const int k = fixed.k ? *fixed.k : 2 * (1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(valid_k))));
      const double p = fixed.p ? *fixed.p : rng.uniform01();
      return gen_ws(n, k, p, rng);
    }
    case Model::Ba: {
      const int m = fixed.m ? *fixed.m : 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 1)));
      return gen_ba(n, m, rng);
    }
    case Model::Geometric: {
      const double radius = fixed.radius ? *fixed.radius : rng.uniform01();
      return gen_geometric(n, radius, rng);
    }
  }
  throw Error(Errc::BadParam, "unhandled model");
}

Sample sample_batch(const GeneratorConfig& config, const EdgeHistogram* histogram, unsigned workers) {
  if (config.count < 1) throw Error(Errc::BadParam, "sample count must be at least 1");
  check_order(config.n);
  if (needs_histogram(config.model) && histogram == nullptr) {
    throw Error(Errc::MissingHistogram, std::string(model_name(config.model)) + " needs the atlas edge histogram");
  }
  // Validate parameters once on the calling thread so errors do not escape workers.
  (void)draw_graph(config, 0, histogram);

  Sample sample;
  sample.config = config;
  sample.graphs.resize(config.count, Graph::empty(1));
  sample.stats.resize(config.count);
  parallel_blocks(config.count, workers, [&](unsigned, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      sample.graphs[i] = draw_graph(config, i, histogram);
      sample.stats[i] = stat_vector(sample.graphs[i]);
    }
  });
  return sample;
}

}  // namespace samestats
