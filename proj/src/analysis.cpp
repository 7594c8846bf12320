#include "samestats/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "samestats/error.hpp"

namespace samestats {

namespace {

std::vector<double> defined_values(std::span<const double> xs) {
  std::vector<double> out;
  out.reserve(xs.size());
  for (double x : xs) {
    if (!std::isnan(x)) out.push_back(x);
  }
  return out;
}

struct Bounds {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  bool any() const noexcept { return lo <= hi; }
};

Bounds bounds_of(std::span<const StatVector> stats, Stat s) {
  Bounds b;
  for (const auto& sv : stats) {
    const double v = sv.value(s);
    if (std::isnan(v)) continue;
    b.lo = std::min(b.lo, v);
    b.hi = std::max(b.hi, v);
  }
  return b;
}

}  // namespace

std::optional<double> pearson(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) {
    throw Error(Errc::ShapeError, "pearson inputs have lengths " + std::to_string(xs.size()) + " and " +
                                      std::to_string(ys.size()));
  }
  std::size_t count = 0;
  double mx = 0;
  double my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (std::isnan(xs[i]) || std::isnan(ys[i])) continue;
    ++count;
    mx += xs[i];
    my += ys[i];
  }
  if (count < 2) return std::nullopt;
  mx /= static_cast<double>(count);
  my /= static_cast<double>(count);
  double sxx = 0;
  double syy = 0;
  double sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (std::isnan(xs[i]) || std::isnan(ys[i])) continue;
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx <= 0 || syy <= 0) return std::nullopt;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::vector<NormalizedStatVector> normalize_all(std::span<const StatVector> stats, double apl_ref) {
  std::vector<NormalizedStatVector> out;
  out.reserve(stats.size());
  for (const auto& sv : stats) out.push_back(normalize(sv, apl_ref));
  return out;
}

CorrelationMatrix correlation_matrix(std::span<const NormalizedStatVector> sample) {
  if (sample.empty()) throw Error(Errc::EmptyInput, "correlation matrix of an empty sample");
  std::array<std::vector<double>, 10> columns;
  for (std::size_t j = 0; j < 10; ++j) {
    columns[j].reserve(sample.size());
    for (const auto& row : sample) columns[j].push_back(row[j]);
  }
  CorrelationMatrix out;
  out.sample_size = sample.size();
  for (std::size_t i = 0; i < 10; ++i) {
    for (std::size_t j = i; j < 10; ++j) {
      std::size_t defined = 0;
      for (std::size_t k = 0; k < sample.size(); ++k) {
        if (!std::isnan(columns[i][k]) && !std::isnan(columns[j][k])) ++defined;
      }
      std::optional<double> r = pearson(columns[i], columns[j]);
      if (i == j && r) r = 1.0;
      out.values[i * 10 + j] = out.values[j * 10 + i] = r;
      out.defined_counts[i * 10 + j] = out.defined_counts[j * 10 + i] = defined;
    }
  }
  return out;
}

CoverageReport bounding_box_ratio(std::span<const StatVector> sample, std::span<const StatVector> truth) {
  if (sample.empty() || truth.empty()) throw Error(Errc::EmptyInput, "coverage needs non-empty sample and truth");
  if (sample.front().n != truth.front().n) throw Error(Errc::BadParam, "coverage compares sets of different order");
  CoverageReport report;
  report.volume_ratio = 1.0;
  for (Stat s : kTenStats) {
    const Bounds t = bounds_of(truth, s);
    const Bounds smp = bounds_of(sample, s);
    StatRange range;
    range.stat = s;
    range.truth_min = t.any() ? t.lo : 0;
    range.truth_max = t.any() ? t.hi : 0;
    range.sample_min = smp.any() ? smp.lo : 0;
    range.sample_max = smp.any() ? smp.hi : 0;
    const double truth_span = range.truth_max - range.truth_min;
    range.degenerate = !(truth_span > 0);
    if (!range.degenerate) {
      range.ratio = smp.any() ? (range.sample_max - range.sample_min) / truth_span : 0.0;
      report.volume_ratio *= range.ratio;
      ++report.dims_used;
    } else {
      range.ratio = 1.0;
    }
    report.ranges.push_back(range);
  }
  return report;
}

CoverageReport average_coverage(std::span<const CoverageReport> runs) {
  if (runs.empty()) throw Error(Errc::EmptyInput, "no coverage runs to average");
  CoverageReport out = runs.front();
  out.runs = static_cast<int>(runs.size());
  const auto count = static_cast<double>(runs.size());
  out.volume_ratio = 0;
  for (auto& r : out.ranges) r.sample_min = r.sample_max = r.ratio = 0;
  for (const auto& run : runs) {
    out.volume_ratio += run.volume_ratio / count;
    for (std::size_t d = 0; d < out.ranges.size(); ++d) {
      out.ranges[d].sample_min += run.ranges[d].sample_min / count;
      out.ranges[d].sample_max += run.ranges[d].sample_max / count;
      out.ranges[d].ratio += run.ranges[d].ratio / count;
    }
  }
  return out;
}

double ks_statistic(std::span<const double> xs, std::span<const double> ys) {
  std::vector<double> a = defined_values(xs);
  std::vector<double> b = defined_values(ys);
  if (a.empty() || b.empty()) throw Error(Errc::EmptyInput, "KS statistic needs two non-empty samples");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const auto na = static_cast<double>(a.size());
  const auto nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double best = 0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    best = std::max(best, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return best;
}

double kl_divergence(std::span<const double> p_sample, std::span<const double> q_sample, int bins, double smoothing) {
  if (bins < 2) throw Error(Errc::BadBins, "KL divergence needs at least 2 bins");
  const std::vector<double> p = defined_values(p_sample);
  const std::vector<double> q = defined_values(q_sample);
  if (p.empty() || q.empty()) throw Error(Errc::EmptyInput, "KL divergence needs two non-empty samples");
  const auto [pmin, pmax] = std::minmax_element(p.begin(), p.end());
  const auto [qmin, qmax] = std::minmax_element(q.begin(), q.end());
  const double lo = std::min(*pmin, *qmin);
  const double hi = std::max(*pmax, *qmax);
  const auto nbins = static_cast<std::size_t>(bins);
  auto histogram = [&](const std::vector<double>& xs) {
    std::vector<double> h(nbins, 0.0);
    for (double x : xs) {
      std::size_t b = 0;
      if (hi > lo) b = std::min(nbins - 1, static_cast<std::size_t>((x - lo) / (hi - lo) * bins));
      h[b] += 1.0;
    }
    const double norm = 1.0 + smoothing * bins;
    for (double& v : h) v = (v / static_cast<double>(xs.size()) + smoothing) / norm;
    return h;
  };
  const std::vector<double> hp = histogram(p);
  const std::vector<double> hq = histogram(q);
  double kl = 0;
  for (std::size_t b = 0; b < nbins; ++b) kl += hp[b] * std::log(hp[b] / hq[b]);
  return std::max(0.0, kl);
}

std::string_view trend_name(TrendPattern p) noexcept {
  switch (p) {
    case TrendPattern::Constant: return "CONSTANT";
    case TrendPattern::Decreasing: return "DECREASING";
    case TrendPattern::Increasing: return "INCREASING";
    case TrendPattern::NonMonotonic: return "NON_MONOTONIC";
    case TrendPattern::Undefined: return "UNDEFINED";
  }
  return "UNDEFINED";
}

TrendPattern classify_trend(std::span<const std::optional<double>> series, double tolerance) {
  if (series.empty()) return TrendPattern::Undefined;
  for (const auto& v : series) {
    if (!v) return TrendPattern::Undefined;
  }
  if (series.size() == 1) return TrendPattern::Constant;
  const std::size_t steps = series.size() - 1;
  double variation = 0;
  bool down = true;
  bool up = true;
  for (std::size_t i = 0; i < steps; ++i) {
    const double delta = *series[i + 1] - *series[i];
    variation += std::abs(delta);
    down = down && delta <= tolerance;
    up = up && delta >= -tolerance;
  }
  if (variation < tolerance * static_cast<double>(steps)) return TrendPattern::Constant;
  if (down && up) return *series.back() < *series.front() ? TrendPattern::Decreasing : TrendPattern::Increasing;
  if (down) return TrendPattern::Decreasing;
  if (up) return TrendPattern::Increasing;
  return TrendPattern::NonMonotonic;
}

std::vector<TrendSeries> correlation_trends(int n_min, int n_max, const GeneratorConfig& generator,
                                            std::size_t per_n_count, const AtlasProvider& atlases) {
  if (n_min < 2 || n_max < n_min || n_max > kMaxOrder) throw Error(Errc::BadParam, "invalid order range for trends");
  std::vector<TrendSeries> series;
  for (std::size_t i = 0; i < 10; ++i) {
    for (std::size_t j = i + 1; j < 10; ++j) {
      TrendSeries s;
      s.first = kTenStats[i];
      s.second = kTenStats[j];
      series.push_back(s);
    }
  }
  for (int n = n_min; n <= n_max; ++n) {
    std::optional<CorrelationMatrix> truth;
    if (n <= kMaxEnumerationOrder) {
      const Atlas* atlas = atlases ? atlases(n) : nullptr;
      if (atlas == nullptr) throw Error(Errc::MissingAtlas, "no ground-truth atlas for n=" + std::to_string(n));
      const std::vector<StatVector> stats = atlas->stats();
      truth = correlation_matrix(normalize_all(stats, atlas->apl_ref));
    }
    GeneratorConfig cfg = generator;
    cfg.n = n;
    cfg.count = per_n_count;
    const EdgeHistogram* hist = nullptr;
    if (needs_histogram(cfg.model)) {
      const Atlas* atlas = atlases ? atlases(n) : nullptr;
      if (atlas == nullptr) throw Error(Errc::MissingAtlas, "population strategy needs the atlas for n=" + std::to_string(n));
      hist = &atlas->histogram;
    }
    const Sample sample = sample_batch(cfg, hist);
    const CorrelationMatrix gen = correlation_matrix(normalize_all(sample.stats, max_apl(sample.stats)));
    std::size_t k = 0;
    for (std::size_t i = 0; i < 10; ++i) {
      for (std::size_t j = i + 1; j < 10; ++j, ++k) {
        TrendPoint p;
        p.n = n;
        if (truth) p.truth = truth->at(i, j);
        p.generator = gen.at(i, j);
        series[k].points.push_back(p);
      }
    }
  }
  for (auto& s : series) {
    std::vector<std::optional<double>> truth_values;
    std::vector<std::optional<double>> gen_values;
    for (const auto& p : s.points) {
      if (p.n <= kMaxEnumerationOrder) truth_values.push_back(p.truth);
      gen_values.push_back(p.generator);
    }
    s.truth_pattern = classify_trend(truth_values);
    s.generator_pattern = classify_trend(gen_values);
  }
  return series;
}

}  // namespace samestats
