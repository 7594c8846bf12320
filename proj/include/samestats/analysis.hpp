#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "samestats/atlas.hpp"
#include "samestats/generators.hpp"
#include "samestats/stats.hpp"

namespace samestats {

// Product-moment correlation over positions where both values are defined
// (non-NaN). Empty when fewer than two pairs remain or a variance is zero.
// Throws ShapeError on length mismatch.
std::optional<double> pearson(std::span<const double> xs, std::span<const double> ys);

struct CorrelationMatrix {
  std::array<std::optional<double>, 100> values{};  // row-major over kTenStats
  std::array<std::size_t, 100> defined_counts{};
  std::size_t sample_size = 0;

  const std::optional<double>& at(std::size_t i, std::size_t j) const noexcept { return values[i * 10 + j]; }
};

std::vector<NormalizedStatVector> normalize_all(std::span<const StatVector> stats, double apl_ref);
// Pairwise-complete deletion for undefined assortativity.
CorrelationMatrix correlation_matrix(std::span<const NormalizedStatVector> sample);

struct StatRange {
  Stat stat = Stat::Acc;
  double truth_min = 0;
  double truth_max = 0;
  double sample_min = 0;
  double sample_max = 0;
  double ratio = 0;          // sample span / truth span
  bool degenerate = false;  // zero truth span; excluded from the volume
};

struct CoverageReport {
  std::vector<StatRange> ranges;  // one per kTenStats entry
  double volume_ratio = 0;
  int dims_used = 0;
  int runs = 1;
};

// Ratio of 10-dimensional bounding-box volumes, sample over truth, on raw
// statistic values. Throws EmptyInput.
CoverageReport bounding_box_ratio(std::span<const StatVector> sample, std::span<const StatVector> truth);
// Mean of per-run ratios and per-dimension sample bounds.
CoverageReport average_coverage(std::span<const CoverageReport> runs);

// Largest gap between the two empirical CDFs; NaNs are dropped.
double ks_statistic(std::span<const double> xs, std::span<const double> ys);

inline constexpr int kDefaultKlBins = 20;
inline constexpr double kDefaultKlSmoothing = 1e-9;

// KL(P||Q) of the two samples binned over their joint range; every bin
// frequency gets `smoothing` added before renormalisation.
double kl_divergence(std::span<const double> p_sample, std::span<const double> q_sample, int bins = kDefaultKlBins,
                     double smoothing = kDefaultKlSmoothing);

enum class TrendPattern { Constant, Decreasing, Increasing, NonMonotonic, Undefined };

std::string_view trend_name(TrendPattern p) noexcept;

inline constexpr double kTrendTolerance = 0.02;

// CONSTANT when the total variation is below tolerance per step; otherwise
// DECREASING / INCREASING when no step moves the other way by more than the
// tolerance; otherwise NON_MONOTONIC. UNDEFINED if any value is missing.
TrendPattern classify_trend(std::span<const std::optional<double>> series, double tolerance = kTrendTolerance);

struct TrendPoint {
  int n = 0;
  std::optional<double> truth;
  std::optional<double> generator;
};

struct TrendSeries {
  Stat first = Stat::Acc;
  Stat second = Stat::Acc;
  std::vector<TrendPoint> points;
  TrendPattern truth_pattern = TrendPattern::Undefined;
  TrendPattern generator_pattern = TrendPattern::Undefined;
};

// Returns the ground-truth atlas for n, or nullptr when none is available.
using AtlasProvider = std::function<const Atlas*(int n)>;

// Correlation of every statistic pair (45 series) per order, for the ground
// truth (n <= 10, atlas required) and for per_n_count draws of the template
// generator at each n.
std::vector<TrendSeries> correlation_trends(int n_min, int n_max, const GeneratorConfig& generator,
                                            std::size_t per_n_count, const AtlasProvider& atlases);

}  // namespace samestats
