#pragma once

#include <span>

#include "json.hpp"
#include "samestats/analysis.hpp"
#include "samestats/atlas.hpp"
#include "samestats/error.hpp"
#include "samestats/finder.hpp"
#include "samestats/stats.hpp"

namespace samestats {

using Json = nlohmann::ordered_json;

// Undefined reals (NaN, empty optionals) serialize as null.
Json to_json(const StatVector& sv);
Json to_json(const CorrelationMatrix& m);
Json to_json(const CoverageReport& c);
Json to_json(const TrendSeries& s);
Json to_json(std::span<const TrendSeries> series);
// Exemplars carry adjacency lists when with_adjacency is set.
Json to_json(const SlotResult& r, bool with_adjacency = false);
Json to_json(const FilterQuery& q);
Json to_json(const AtlasManifest& m);
Json error_json(const Error& e);

// Parses {"n"?, "constraints":[{"stat","min","max"}], "vary", "rt_mode"?};
// malformed bodies and unknown statistics throw BadQuery.
FilterQuery filter_query_from_json(const Json& body, int n);

Json adjacency_json(const Graph& g);

}  // namespace samestats
