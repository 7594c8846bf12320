#include "samestats/stats.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <cmath>
#include <limits>

#include "samestats/error.hpp"

namespace samestats {

namespace {

struct StatInfo {
  Stat stat;
  std::string_view name;
  bool integer;
};

constexpr std::array<StatInfo, 13> kStatInfo = {{
    {Stat::Acc, "acc", false},
    {Stat::Gcc, "gcc", false},
    {Stat::Scc, "scc", false},
    {Stat::Apl, "apl", false},
    {Stat::R, "r", false},
    {Stat::Diam, "diam", true},
    {Stat::Den, "den", false},
    {Stat::Rt, "rt", false},
    {Stat::Cv, "cv", true},
    {Stat::Ce, "ce", true},
    {Stat::M, "m", true},
    {Stat::Triangles, "triangles", true},
    {Stat::Girth, "girth", true},
}};

void check_vertex(const Graph& g, int v) {
  if (v < 0 || v >= g.order()) throw Error(Errc::InvalidVertex, "vertex " + std::to_string(v) + " out of range");
}

int pop(VertexMask m) noexcept { return std::popcount(m); }

struct DistanceSummary {
  std::uint64_t finite_pairs = 0;  // unordered pairs with a path
  std::uint64_t distance_sum = 0;  // over those pairs
  int max_distance = 0;
};

// Level-synchronous BFS from every vertex over neighbour masks.
DistanceSummary distances(const Graph& g) noexcept {
  DistanceSummary out;
  for (int s = 0; s < g.order(); ++s) {
    auto visited = static_cast<VertexMask>(1U << s);
    VertexMask frontier = visited;
    for (int d = 1; frontier; ++d) {
      VertexMask next = 0;
      for (VertexMask f = frontier; f; f &= static_cast<VertexMask>(f - 1)) next |= g.adjacency(std::countr_zero(f));
      next = static_cast<VertexMask>(next & ~visited);
      if (!next) break;
      const int reached = pop(next);
      out.finite_pairs += static_cast<std::uint64_t>(reached);
      out.distance_sum += static_cast<std::uint64_t>(reached) * static_cast<std::uint64_t>(d);
      out.max_distance = std::max(out.max_distance, d);
      visited |= next;
      frontier = next;
    }
  }
  out.finite_pairs /= 2;
  out.distance_sum /= 2;
  return out;
}

std::uint64_t connected_triples(const Graph& g) noexcept {
  std::uint64_t triples = 0;
  for (int v = 0; v < g.order(); ++v) {
    const auto d = static_cast<std::uint64_t>(pop(g.adjacency(v)));
    triples += d * (d - (d > 0 ? 1 : 0)) / 2;
  }
  return triples;
}

}  // namespace

std::string_view stat_name(Stat s) noexcept {
  for (const auto& info : kStatInfo) {
    if (info.stat == s) return info.name;
  }
  return "?";
}

Stat parse_stat(std::string_view name) {
  std::string lower;
  for (char c : name) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  for (const auto& info : kStatInfo) {
    if (info.name == lower) return info.stat;
  }
  if (lower == "edges") return Stat::M;
  if (lower == "density") return Stat::Den;
  if (lower == "assortativity") return Stat::R;
  throw Error(Errc::UnknownStatistic, "unknown statistic '" + std::string(name) + "'");
}

bool is_integer_stat(Stat s) noexcept {
  for (const auto& info : kStatInfo) {
    if (info.stat == s) return info.integer;
  }
  return false;
}

double StatVector::value(Stat s) const noexcept {
  switch (s) {
    case Stat::Acc: return acc;
    case Stat::Gcc: return gcc;
    case Stat::Scc: return scc;
    case Stat::Apl: return apl;
    case Stat::R: return r ? *r : std::numeric_limits<double>::quiet_NaN();
    case Stat::Diam: return diam;
    case Stat::Den: return den;
    case Stat::Rt: return rt;
    case Stat::Cv: return cv;
    case Stat::Ce: return ce;
    case Stat::M: return m;
    case Stat::Triangles: return triangles;
    case Stat::Girth: return girth;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double StatVector::rt_cubic() const noexcept {
  if (n < 3) return 0;
  const double triples = static_cast<double>(n) * (n - 1) * (n - 2) / 6.0;
  return triangles / triples;
}

int count_triangles(const Graph& g) {
  int total = 0;
  for (int u = 0; u < g.order(); ++u) {
    const auto above = static_cast<VertexMask>(~((2U << u) - 1));
    for (VertexMask nb = static_cast<VertexMask>(g.adjacency(u) & above); nb; nb &= static_cast<VertexMask>(nb - 1)) {
      const int v = std::countr_zero(nb);
      const auto beyond = static_cast<VertexMask>(~((2U << v) - 1));
      total += pop(static_cast<VertexMask>(g.adjacency(u) & g.adjacency(v) & beyond));
    }
  }
  return total;
}

int girth(const Graph& g) {
  if (count_triangles(g) > 0) return 3;
  const int n = g.order();
  int best = std::numeric_limits<int>::max();
  std::array<int, kMaxOrder> dist{};
  std::array<int, kMaxOrder> parent{};
  std::array<int, kMaxOrder> queue{};
  for (int root = 0; root < n; ++root) {
    dist.fill(-1);
    dist[static_cast<std::size_t>(root)] = 0;
    parent[static_cast<std::size_t>(root)] = -1;
    int head = 0;
    int tail = 0;
    queue[static_cast<std::size_t>(tail++)] = root;
    while (head < tail) {
      const int x = queue[static_cast<std::size_t>(head++)];
      if (2 * dist[static_cast<std::size_t>(x)] >= best) break;
      for (VertexMask nb = g.adjacency(x); nb; nb &= static_cast<VertexMask>(nb - 1)) {
        const int y = std::countr_zero(nb);
        if (dist[static_cast<std::size_t>(y)] < 0) {
          dist[static_cast<std::size_t>(y)] = dist[static_cast<std::size_t>(x)] + 1;
          parent[static_cast<std::size_t>(y)] = x;
          queue[static_cast<std::size_t>(tail++)] = y;
        } else if (parent[static_cast<std::size_t>(x)] != y) {
          best = std::min(best, dist[static_cast<std::size_t>(x)] + dist[static_cast<std::size_t>(y)] + 1);
        }
      }
    }
  }
  return best == std::numeric_limits<int>::max() ? 0 : best;
}

double local_clustering(const Graph& g, int v) {
  check_vertex(g, v);
  const VertexMask nb = g.adjacency(v);
  const int k = pop(nb);
  if (k < 2) return 0;
  int links = 0;
  for (VertexMask m = nb; m; m &= static_cast<VertexMask>(m - 1)) links += pop(static_cast<VertexMask>(g.adjacency(std::countr_zero(m)) & nb));
  links /= 2;
  return static_cast<double>(links) / (k * (k - 1) / 2.0);
}

double acc(const Graph& g) {
  double sum = 0;
  for (int v = 0; v < g.order(); ++v) sum += local_clustering(g, v);
  return sum / g.order();
}

double gcc(const Graph& g) {
  const std::uint64_t triples = connected_triples(g);
  if (triples == 0) return 0;
  return 3.0 * count_triangles(g) / static_cast<double>(triples);
}

// Square clustering of v: sum of q over neighbour pairs divided by the sum of
// a + q, where q counts common neighbours of the pair other than v and
// a = (k_u - eta)(k_w - eta) with eta = 1 + q + [u ~ w].
double square_clustering(const Graph& g, int v) {
  check_vertex(g, v);
  const VertexMask nb = g.adjacency(v);
  if (pop(nb) < 2) return 0;
  const auto not_v = static_cast<VertexMask>(~(1U << v));
  std::int64_t squares = 0;
  std::int64_t potential = 0;
  for (VertexMask a = nb; a; a &= static_cast<VertexMask>(a - 1)) {
    const int u = std::countr_zero(a);
    for (VertexMask b = static_cast<VertexMask>(a & (a - 1)); b; b &= static_cast<VertexMask>(b - 1)) {
      const int w = std::countr_zero(b);
      const int q = pop(static_cast<VertexMask>(g.adjacency(u) & g.adjacency(w) & not_v));
      const int eta = 1 + q + (g.has_edge(u, w) ? 1 : 0);
      const int ku = pop(g.adjacency(u));
      const int kw = pop(g.adjacency(w));
      squares += q;
      potential += static_cast<std::int64_t>(ku - eta) * (kw - eta) + q;
    }
  }
  return potential > 0 ? static_cast<double>(squares) / static_cast<double>(potential) : 0.0;
}

double scc(const Graph& g) {
  double sum = 0;
  for (int v = 0; v < g.order(); ++v) sum += square_clustering(g, v);
  return sum / g.order();
}

double apl(const Graph& g) {
  const auto d = distances(g);
  return d.finite_pairs == 0 ? 0.0 : static_cast<double>(d.distance_sum) / static_cast<double>(d.finite_pairs);
}

int diameter(const Graph& g) { return distances(g).max_distance; }

std::optional<double> assortativity(const Graph& g) {
  if (g.edge_count() == 0) throw Error(Errc::NoEdges, "assortativity needs at least one edge");
  // Pearson over the symmetrized endpoint-degree list, in exact integers:
  // r = (M*S_xy - S_x^2) / (M*S_xx - S_x^2) with M = 2m entries.
  std::int64_t sx = 0;
  std::int64_t sxx = 0;
  std::int64_t sxy = 0;
  for (auto [u, v] : g.edges()) {
    const std::int64_t du = pop(g.adjacency(u));
    const std::int64_t dv = pop(g.adjacency(v));
    sx += du + dv;
    sxx += du * du + dv * dv;
    sxy += 2 * du * dv;
  }
  const std::int64_t entries = 2 * static_cast<std::int64_t>(g.edge_count());
  const std::int64_t var = entries * sxx - sx * sx;
  if (var == 0) return std::nullopt;
  const std::int64_t cov = entries * sxy - sx * sx;
  return static_cast<double>(cov) / static_cast<double>(var);
}

double density(const Graph& g) {
  const int n = g.order();
  if (n < 2) throw Error(Errc::OrderTooSmall, "density is undefined for fewer than 2 vertices");
  return 2.0 * g.edge_count() / (static_cast<double>(n) * (n - 1));
}

StatVector stat_vector(const Graph& g) {
  StatVector sv;
  sv.n = g.order();
  sv.den = density(g);
  sv.m = g.edge_count();
  sv.triangles = count_triangles(g);
  sv.girth = girth(g);
  sv.acc = acc(g);
  const std::uint64_t triples = connected_triples(g);
  sv.gcc = triples == 0 ? 0.0 : 3.0 * sv.triangles / static_cast<double>(triples);
  sv.scc = scc(g);
  const auto d = distances(g);
  sv.apl = d.finite_pairs == 0 ? 0.0 : static_cast<double>(d.distance_sum) / static_cast<double>(d.finite_pairs);
  sv.diam = d.max_distance;
  if (sv.m > 0) sv.r = assortativity(g);
  sv.rt = sv.triangles / (sv.n * (sv.n - 1) / 2.0);
  sv.cv = node_connectivity(g);
  sv.ce = edge_connectivity(g);
  return sv;
}

NormalizedStatVector normalize(const StatVector& sv, double apl_ref) {
  if (!(apl_ref > 0)) throw Error(Errc::BadReference, "APL reference must be positive");
  if (sv.n < 2) throw Error(Errc::OrderTooSmall, "normalization needs at least 2 vertices");
  const double span = sv.n - 1;
  NormalizedStatVector out;
  out.apl_ref = apl_ref;
  out.values = {sv.acc,       sv.gcc, sv.scc, sv.apl / apl_ref, sv.value(Stat::R),
                sv.diam / span, sv.den, sv.rt,  sv.cv / span,     sv.ce / span};
  return out;
}

}  // namespace samestats
