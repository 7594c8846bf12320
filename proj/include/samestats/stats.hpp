#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "samestats/graph.hpp"

namespace samestats {

// Every per-graph quantity that can be queried by name. The first ten
// (kTenStats) form the summary vector used for correlation and coverage.
enum class Stat {
  Acc,
  Gcc,
  Scc,
  Apl,
  R,
  Diam,
  Den,
  Rt,
  Cv,
  Ce,
  M,
  Triangles,
  Girth,
};

inline constexpr std::array<Stat, 10> kTenStats = {Stat::Acc, Stat::Gcc, Stat::Scc, Stat::Apl, Stat::R,
                                                   Stat::Diam, Stat::Den, Stat::Rt, Stat::Cv, Stat::Ce};

std::string_view stat_name(Stat s) noexcept;
// Case-insensitive; throws UnknownStatistic.
Stat parse_stat(std::string_view name);
bool is_integer_stat(Stat s) noexcept;

struct StatVector {
  int n = 0;
  int m = 0;
  int triangles = 0;
  int girth = 0;
  double acc = 0;
  double gcc = 0;
  double scc = 0;
  double apl = 0;
  std::optional<double> r;  // empty when either degree marginal has zero variance
  int diam = 0;
  double den = 0;
  double rt = 0;  // triangles / (n(n-1)/2)
  int cv = 0;
  int ce = 0;

  // NaN for an undefined assortativity.
  double value(Stat s) const noexcept;
  // triangles / C(n,3), always within [0,1].
  double rt_cubic() const noexcept;

  friend bool operator==(const StatVector&, const StatVector&) = default;
};

struct NormalizedStatVector {
  // Indexed like kTenStats; r is NaN when undefined.
  std::array<double, 10> values{};
  double apl_ref = 1;

  double operator[](std::size_t i) const noexcept { return values[i]; }
};

int count_triangles(const Graph& g);
int girth(const Graph& g);
double local_clustering(const Graph& g, int v);
double acc(const Graph& g);
double gcc(const Graph& g);
double square_clustering(const Graph& g, int v);
double scc(const Graph& g);
double apl(const Graph& g);
// Throws NoEdges for an edgeless graph; empty optional for regular graphs.
std::optional<double> assortativity(const Graph& g);
int diameter(const Graph& g);
double density(const Graph& g);
int node_connectivity(const Graph& g);
int edge_connectivity(const Graph& g);

StatVector stat_vector(const Graph& g);
NormalizedStatVector normalize(const StatVector& sv, double apl_ref);

}  // namespace samestats
