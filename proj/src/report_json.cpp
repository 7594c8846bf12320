#include "samestats/report_json.hpp"

#include <cmath>

#include "samestats/graph6.hpp"

namespace samestats {

namespace {


Json real(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

Json stat_names() {
  Json names = Json::array();
  for (Stat s : kTenStats) names.push_back(stat_name(s));
  return names;
}

}  // namespace

Json to_json(const StatVector& sv) {
  return Json{{"n", sv.n},     {"m", sv.m},       {"triangles", sv.triangles}, {"girth", sv.girth},
              {"acc", sv.acc}, {"gcc", sv.gcc},   {"scc", sv.scc},             {"apl", sv.apl},
              {"r", real(sv.r)}, {"diam", sv.diam}, {"den", sv.den},           {"rt", sv.rt},
              {"rt_cubic", sv.rt_cubic()}, {"cv", sv.cv}, {"ce", sv.ce}};
}

Json to_json(const CorrelationMatrix& m) {
  Json matrix = Json::array();
  Json counts = Json::array();
  for (std::size_t i = 0; i < 10; ++i) {
    Json row = Json::array();
    Json count_row = Json::array();
    for (std::size_t j = 0; j < 10; ++j) {
      row.push_back(real(m.at(i, j)));
      count_row.push_back(m.defined_counts[i * 10 + j]);
    }
    matrix.push_back(std::move(row));
    counts.push_back(std::move(count_row));
  }
  return Json{{"stats", stat_names()}, {"sample_size", m.sample_size}, {"matrix", matrix}, {"defined_counts", counts}};
}

Json to_json(const CoverageReport& c) {
  Json ranges = Json::array();
  for (const auto& r : c.ranges) {
    ranges.push_back(Json{{"stat", stat_name(r.stat)},
                          {"truth_min", r.truth_min},
                          {"truth_max", r.truth_max},
                          {"sample_min", r.sample_min},
                          {"sample_max", r.sample_max},
                          {"ratio", r.ratio},
                          {"degenerate", r.degenerate}});
  }
  return Json{{"volume_ratio", c.volume_ratio}, {"dims_used", c.dims_used}, {"runs", c.runs}, {"ranges", ranges}};
}

Json to_json(const TrendSeries& s) {
  Json points = Json::array();
  for (const auto& p : s.points) {
    points.push_back(Json{{"n", p.n}, {"truth", real(p.truth)}, {"generator", real(p.generator)}});
  }
  return Json{{"pair", Json::array({stat_name(s.first), stat_name(s.second)})},
              {"points", points},
              {"truth_pattern", trend_name(s.truth_pattern)},
              {"generator_pattern", trend_name(s.generator_pattern)}};
}

Json to_json(std::span<const TrendSeries> series) {
  Json out = Json::array();
  for (const auto& s : series) out.push_back(to_json(s));
  return out;
}

Json adjacency_json(const Graph& g) {
  Json adj = Json::array();
  for (int v = 0; v < g.order(); ++v) {
    Json row = Json::array();
    for (int w : neighbors(g, v)) row.push_back(w);
    adj.push_back(std::move(row));
  }
  return adj;
}

Json to_json(const SlotResult& r, bool with_adjacency) {
  Json slots = Json::array();
  for (const auto& s : r.slots) {
    Json slot{{"label", s.label}};
    if (s.integer) {
      slot["value"] = static_cast<int>(s.lo);
    } else {
      slot["lo"] = s.lo;
      slot["hi"] = s.hi;
    }
    slot["count"] = s.count;
    slot["exemplar"] = s.exemplar ? Json(*s.exemplar) : Json(nullptr);
    if (s.exemplar_stats) slot["exemplar_stats"] = to_json(*s.exemplar_stats);
    if (with_adjacency && s.exemplar) slot["adjacency"] = adjacency_json(decode_graph6(*s.exemplar));
    slots.push_back(std::move(slot));
  }
  return Json{{"n", r.n},
              {"vary", stat_name(r.vary)},
              {"rt_mode", rt_mode_name(r.rt_mode)},
              {"total_matches", r.total_matches},
              {"undefined_count", r.undefined_count},
              {"occupied", r.occupied()},
              {"slots", slots}};
}

Json to_json(const FilterQuery& q) {
  Json constraints = Json::array();
  for (const auto& c : q.constraints) {
    constraints.push_back(Json{{"stat", stat_name(c.stat)}, {"min", c.min}, {"max", c.max}});
  }
  return Json{{"n", q.n}, {"constraints", constraints}, {"vary", stat_name(q.vary)}, {"rt_mode", rt_mode_name(q.rt_mode)}};
}

Json to_json(const AtlasManifest& m) {
  return Json{{"n", m.n},
              {"count", m.count},
              {"sha256_graphs", m.sha256_graphs},
              {"sha256_stats", m.sha256_stats},
              {"apl_ref", m.apl_ref},
              {"format_version", m.format_version},
              {"built_at", m.built_at}};
}

Json error_json(const Error& e) { return Json{{"error", to_string(e.code())}, {"message", e.what()}}; }

FilterQuery filter_query_from_json(const Json& body, int n) {
  try {
    if (!body.is_object()) throw Error(Errc::BadQuery, "query body must be an object");
    FilterQuery q;
    q.n = n;
    if (body.contains("vary")) {
      q.vary = parse_stat(body.at("vary").get<std::string>());
    } else {
      throw Error(Errc::BadQuery, "query needs a free statistic 'vary'");
    }
    if (body.contains("rt_mode")) q.rt_mode = parse_rt_mode(body.at("rt_mode").get<std::string>());
    if (body.contains("constraints")) {
      for (const auto& c : body.at("constraints")) {
        q.constraints.push_back(
            {parse_stat(c.at("stat").get<std::string>()), c.at("min").get<double>(), c.at("max").get<double>()});
      }
    }
    validate_query(q);
    return q;
  } catch (const Error& e) {
    if (e.code() == Errc::BadQuery) throw;
    throw Error(Errc::BadQuery, e.what());
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::BadQuery, std::string("malformed query: ") + e.what());
  }
}

}  // namespace samestats
