#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "samestats/atlas.hpp"
#include "samestats/stats.hpp"

namespace samestats {

// Denominator used when a query constrains or varies the triangle ratio.
enum class RtMode {
  TableOne,  // triangles / (n(n-1)/2), the stored rt column
  Cubic,     // triangles / C(n,3)
};

std::string_view rt_mode_name(RtMode mode) noexcept;
RtMode parse_rt_mode(std::string_view name);

// Closed interval on the raw statistic value.
struct Constraint {
  Stat stat = Stat::Acc;
  double min = 0;
  double max = 0;
};

struct FilterQuery {
  int n = 0;
  std::vector<Constraint> constraints;
  Stat vary = Stat::R;
  RtMode rt_mode = RtMode::Cubic;
};

struct Match {
  std::string graph6;
  StatVector stats;
};

struct Slot {
  std::string label;
  double lo = 0;  // [lo, hi); the last real-valued slot is closed
  double hi = 0;
  bool integer = false;
  std::size_t count = 0;
  std::optional<std::string> exemplar;  // smallest graph6 in the slot
  std::optional<StatVector> exemplar_stats;
};

struct SlotResult {
  int n = 0;
  Stat vary = Stat::R;
  RtMode rt_mode = RtMode::Cubic;
  std::vector<Slot> slots;
  std::size_t total_matches = 0;   // matches placed in a slot
  std::size_t undefined_count = 0;  // matches whose vary value is undefined

  std::size_t occupied() const noexcept;
};

// Value as seen by the finder: rt follows the mode; r is NaN when undefined.
double query_value(const StatVector& sv, Stat s, RtMode mode) noexcept;

// Throws BadQuery on min > max, NaN bounds, or a constrained vary statistic.
void validate_query(const FilterQuery& q);

std::vector<Match> query(const FilterQuery& q, const Atlas& atlas);
std::vector<Match> query(const FilterQuery& q, std::span<const Match> rows);

// Slot position of one graph under q.vary; empty when the value is undefined.
std::optional<std::size_t> slot_of(const StatVector& sv, const FilterQuery& q, double apl_ref);

// apl_ref normalizes APL when it is the free statistic.
SlotResult slotize(std::span<const Match> matches, const FilterQuery& q, double apl_ref);

SlotResult find(const FilterQuery& q, const Atlas& atlas);

struct NamedQuery {
  std::string name;
  std::string description;
  FilterQuery query;
};

inline constexpr double kPresetSlack = 1e-9;

std::vector<NamedQuery> preset_experiments(RtMode mode = RtMode::Cubic);
std::optional<NamedQuery> find_preset(std::string_view name, RtMode mode = RtMode::Cubic);

}  // namespace samestats
