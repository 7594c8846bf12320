#include "samestats/finder.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>

#include "samestats/error.hpp"

namespace samestats {

namespace {

constexpr double kSnap = 1e-9;

struct SlotLayout {
  bool integer = false;
  double lo = 0;
  double hi = 1;
  int count = 10;  // number of slots
};

int binomial3(int n) { return n * (n - 1) * (n - 2) / 6; }

SlotLayout layout_for(Stat s, int n, RtMode mode) {
  switch (s) {
    case Stat::R: return {false, -1.0, 1.0, 10};
    case Stat::Acc:
    case Stat::Gcc:
    case Stat::Scc:
    case Stat::Den:
    case Stat::Apl: return {false, 0.0, 1.0, 10};
    case Stat::Rt: return {false, 0.0, mode == RtMode::Cubic ? 1.0 : (n - 2) / 3.0, 10};
    case Stat::Diam:
    case Stat::Cv:
    case Stat::Ce: return {true, 0, static_cast<double>(n - 1), n};
    case Stat::Girth: return {true, 0, static_cast<double>(n), n + 1};
    case Stat::Triangles: return {true, 0, static_cast<double>(binomial3(n)), binomial3(n) + 1};
    case Stat::M: return {true, 0, static_cast<double>(pair_count(n)), pair_count(n) + 1};
  }
  throw Error(Errc::UnknownStatistic, "no slot layout");
}

std::string real_label(double lo, double hi, bool closed) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "[%.3g,%.3g%c", lo, hi, closed ? ']' : ')');
  return buf;
}

bool satisfies(const StatVector& sv, const FilterQuery& q) {
  for (const auto& c : q.constraints) {
    const double v = query_value(sv, c.stat, q.rt_mode);
    if (std::isnan(v) || v < c.min || v > c.max) return false;
  }
  return true;
}

}  // namespace

std::string_view rt_mode_name(RtMode mode) noexcept { return mode == RtMode::Cubic ? "cubic" : "table1"; }

RtMode parse_rt_mode(std::string_view name) {
  std::string lower;
  for (char c : name) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (lower == "table1" || lower == "pairs") return RtMode::TableOne;
  if (lower == "cubic" || lower == "triples") return RtMode::Cubic;
  throw Error(Errc::BadQuery, "unknown rt mode '" + std::string(name) + "' (table1|cubic)");
}

std::size_t SlotResult::occupied() const noexcept {
  return static_cast<std::size_t>(std::count_if(slots.begin(), slots.end(), [](const Slot& s) { return s.count > 0; }));
}

double query_value(const StatVector& sv, Stat s, RtMode mode) noexcept {
  if (s == Stat::Rt && mode == RtMode::Cubic) return sv.rt_cubic();
  return sv.value(s);
}

void validate_query(const FilterQuery& q) {
  if (q.n < 1 || q.n > kMaxOrder) throw Error(Errc::BadQuery, "query order out of range");
  for (const auto& c : q.constraints) {
    if (std::isnan(c.min) || std::isnan(c.max)) throw Error(Errc::BadQuery, "constraint bound is not a number");
    if (c.min > c.max) {
      throw Error(Errc::BadQuery, "constraint on " + std::string(stat_name(c.stat)) + " has min > max");
    }
    if (c.stat == q.vary) throw Error(Errc::BadQuery, "free statistic " + std::string(stat_name(c.stat)) + " is also constrained");
  }
}

std::vector<Match> query(const FilterQuery& q, const Atlas& atlas) {
  validate_query(q);
  if (atlas.n != q.n) throw Error(Errc::BadQuery, "query order does not match the atlas");
  std::vector<Match> out;
  for (const auto& row : atlas.rows) {
    if (satisfies(row.stats, q)) out.push_back({row.graph6, row.stats});
  }
  return out;
}

std::vector<Match> query(const FilterQuery& q, std::span<const Match> rows) {
  validate_query(q);
  std::vector<Match> out;
  for (const auto& row : rows) {
    if (row.stats.n != q.n) throw Error(Errc::BadQuery, "sample row has a different order than the query");
    if (satisfies(row.stats, q)) out.push_back(row);
  }
  return out;
}

std::optional<std::size_t> slot_of(const StatVector& sv, const FilterQuery& q, double apl_ref) {
  const SlotLayout layout = layout_for(q.vary, q.n, q.rt_mode);
  double v = query_value(sv, q.vary, q.rt_mode);
  if (std::isnan(v)) return std::nullopt;
  if (q.vary == Stat::Apl) v /= apl_ref;
  int index = 0;
  if (layout.integer) {
    index = static_cast<int>(std::lround(v - layout.lo));
  } else {
    // Values within kSnap below a boundary belong to the upper slot.
    const double width = (layout.hi - layout.lo) / layout.count;
    index = static_cast<int>(std::floor((v - layout.lo) / width + kSnap));
  }
  return static_cast<std::size_t>(std::clamp(index, 0, layout.count - 1));
}

SlotResult slotize(std::span<const Match> matches, const FilterQuery& q, double apl_ref) {
  if (q.vary == Stat::Apl && !(apl_ref > 0)) throw Error(Errc::BadReference, "apl_ref must be positive");
  const SlotLayout layout = layout_for(q.vary, q.n, q.rt_mode);
  SlotResult result;
  result.n = q.n;
  result.vary = q.vary;
  result.rt_mode = q.rt_mode;
  const double span = layout.hi - layout.lo;
  for (int i = 0; i < layout.count; ++i) {
    Slot slot;
    slot.integer = layout.integer;
    if (layout.integer) {
      slot.lo = slot.hi = layout.lo + i;
      slot.label = std::to_string(static_cast<int>(slot.lo));
    } else {
      slot.lo = layout.lo + span * i / layout.count;
      slot.hi = layout.lo + span * (i + 1) / layout.count;
      slot.label = real_label(slot.lo, slot.hi, i + 1 == layout.count);
    }
    result.slots.push_back(std::move(slot));
  }
  for (const auto& match : matches) {
    const std::optional<std::size_t> index = slot_of(match.stats, q, apl_ref);
    if (!index) {
      ++result.undefined_count;
      continue;
    }
    Slot& slot = result.slots[*index];
    ++slot.count;
    if (!slot.exemplar || match.graph6 < *slot.exemplar) {
      slot.exemplar = match.graph6;
      slot.exemplar_stats = match.stats;
    }
    ++result.total_matches;
  }
  return result;
}

SlotResult find(const FilterQuery& q, const Atlas& atlas) {
  const std::vector<Match> matches = query(q, atlas);
  return slotize(matches, q, atlas.apl_ref);
}

std::vector<NamedQuery> preset_experiments(RtMode mode) {
  auto range = [](Stat s, double lo, double hi) { return Constraint{s, lo - kPresetSlack, hi + kPresetSlack}; };
  std::vector<NamedQuery> presets;
  presets.push_back({"assortativity-variability",
                     "Fixed APL, density, GCC and triangle ratio; assortativity varies.",
                     {9,
                      {range(Stat::Apl, 1.42, 1.47), range(Stat::Den, 0.52, 0.57), range(Stat::Gcc, 0.5, 0.6),
                       range(Stat::Rt, 0.15, 0.25)},
                      Stat::R,
                      mode}});
  presets.push_back({"gcc-variability",
                     "Fixed APL, diameter, node and edge connectivity and assortativity; GCC varies.",
                     {9,
                      {range(Stat::Apl, 1.47, 1.69), range(Stat::Diam, 3, 3), range(Stat::Cv, 2, 2),
                       range(Stat::Ce, 2, 2), range(Stat::R, -0.29, -0.22)},
                      Stat::Gcc,
                      mode}});
  presets.push_back({"edge-connectivity-variability",
                     "Fixed SCC, ACC, assortativity and triangle ratio; edge connectivity varies.",
                     {9,
                      {range(Stat::Scc, 0.75, 0.85), range(Stat::Acc, 0.75, 0.8), range(Stat::R, -0.3, -0.2),
                       range(Stat::Rt, 0.35, 0.45)},
                      Stat::Ce,
                      mode}});
  presets.push_back({"same-counts-demo",
                     "Fixed edge count, triangle count, girth and GCC; node connectivity varies.",
                     {8,
                      {range(Stat::M, 13, 13), range(Stat::Triangles, 3, 3), range(Stat::Girth, 3, 3),
                       range(Stat::Gcc, 0.25, 0.3)},
                      Stat::Cv,
                      mode}});
  return presets;
}

std::optional<NamedQuery> find_preset(std::string_view name, RtMode mode) {
  for (auto& p : preset_experiments(mode)) {
    if (p.name == name) return p;
  }
  return std::nullopt;
}

}  // namespace samestats
