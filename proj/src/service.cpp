#include "samestats/service.hpp"

#include <algorithm>
#include <cmath>

#include "httplib.h"
#include "samestats/generators.hpp"
#include "samestats/graph6.hpp"

namespace samestats {

namespace {

Json api_body(std::string_view code, std::string_view message, int status) {
  return Json{{"status", status}, {"code", code}, {"message", message}};
}

Json scatter_rows(std::span<const NormalizedStatVector> rows, std::size_t cap) {
  const std::size_t stride = rows.empty() ? 1 : (rows.size() + cap - 1) / cap;
  Json points = Json::array();
  for (std::size_t i = 0; i < rows.size(); i += stride) {
    Json p = Json::array();
    for (double v : rows[i].values) p.push_back(std::isnan(v) ? Json(nullptr) : Json(v));
    points.push_back(std::move(p));
  }
  return Json{{"total", rows.size()}, {"stride", stride}, {"returned", points.size()}, {"points", points}};
}

std::size_t rate_count(double rate, std::size_t population) {
  if (!(rate > 0 && rate <= 1)) throw Error(Errc::BadQuery, "rate must lie in (0,1]");
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(rate * static_cast<double>(population))));
}

}  // namespace

ApiResult api_error(const Error& e) {
  switch (e.code()) {
    case Errc::MissingAtlas: return {404, api_body("MissingAtlas", e.what(), 404)};
    case Errc::OrderTooLarge: return {400, api_body("OrderTooLarge", e.what(), 400)};
    case Errc::CorruptAtlas:
    case Errc::IoError: return {500, api_body("Internal", e.what(), 500)};
    default: return {400, api_body("BadQuery", e.what(), 400)};
  }
}

Service::Service(ServiceOptions options) : options_(std::move(options)) {}

Service::~Service() { stop(); }

std::shared_ptr<const Atlas> Service::atlas(int n) {
  std::lock_guard lock(mutex_);
  if (auto it = cache_.find(n); it != cache_.end()) return it->second;
  if (n < 2 || n > kMaxEnumerationOrder || !atlas_exists(options_.atlas_dir, n)) {
    throw Error(Errc::MissingAtlas, "no atlas for n=" + std::to_string(n));
  }
  auto loaded = std::make_shared<const Atlas>(load_atlas(n, options_.atlas_dir));
  cache_.emplace(n, loaded);
  return loaded;
}

ApiResult Service::list_atlases() const {
  Json out = Json::array();
  for (int n : available_atlases(options_.atlas_dir)) {
    const AtlasManifest m = read_manifest(options_.atlas_dir, n);
    out.push_back(Json{{"n", m.n}, {"count", m.count}, {"apl_ref", m.apl_ref}});
  }
  return {200, out};
}

ApiResult Service::presets() const {
  Json out = Json::array();
  for (const auto& p : preset_experiments()) {
    out.push_back(Json{{"name", p.name}, {"description", p.description}, {"query", to_json(p.query)}});
  }
  return {200, out};
}

ApiResult Service::correlations(int n, const std::string& source, std::optional<double> rate, std::uint64_t seed) {
  try {
    const auto truth = atlas(n);
    const std::vector<StatVector> truth_stats = truth->stats();
    const std::vector<NormalizedStatVector> truth_rows = normalize_all(truth_stats, truth->apl_ref);
    Json body{{"n", n}, {"source", source}, {"atlas", to_json(correlation_matrix(truth_rows))}};
    Json scatter{{"atlas", scatter_rows(truth_rows, options_.max_scatter_points)}};
    if (source != "atlas") {
      GeneratorConfig config;
      config.model = parse_model(source);
      config.n = n;
      config.seed = seed;
      config.count = rate_count(rate.value_or(0.01), truth->rows.size());
      const Sample sample = sample_batch(config, &truth->histogram, options_.workers);
      const std::vector<NormalizedStatVector> rows = normalize_all(sample.stats, truth->apl_ref);
      body["overlay"] = Json{{"model", model_name(config.model)},
                             {"rate", rate.value_or(0.01)},
                             {"seed", seed},
                             {"count", config.count},
                             {"matrix", to_json(correlation_matrix(rows))}};
      scatter["overlay"] = scatter_rows(rows, options_.max_scatter_points);
    }
    body["scatter"] = std::move(scatter);
    return {200, body};
  } catch (const Error& e) {
    return api_error(e);
  }
}

ApiResult Service::query(int n, const std::string& body) {
  try {
    const auto a = atlas(n);
    Json parsed;
    try {
      parsed = Json::parse(body);
    } catch (const nlohmann::json::exception& e) {
      throw Error(Errc::BadQuery, std::string("body is not JSON: ") + e.what());
    }
    const FilterQuery q = filter_query_from_json(parsed, n);
    return {200, to_json(find(q, *a), true)};
  } catch (const Error& e) {
    return api_error(e);
  }
}

ApiResult Service::generate(const std::string& body) {
  try {
    GeneratorConfig config;
    try {
      const Json req = Json::parse(body);
      config.model = parse_model(req.at("model").get<std::string>());
      config.n = req.at("n").get<int>();
      const auto count = req.at("count").get<double>();
      if (!(count >= 1 && count <= static_cast<double>(options_.max_generate))) {
        throw Error(Errc::BadQuery, "count must be in 1.." + std::to_string(options_.max_generate));
      }
      config.count = static_cast<std::size_t>(count);
      config.seed = req.value("seed", std::uint64_t{0});
      if (req.contains("params") && !req["params"].is_null()) {
        const Json& p = req["params"];
        if (p.contains("p")) config.fixed.p = p["p"].get<double>();
        if (p.contains("k")) config.fixed.k = p["k"].get<int>();
        if (p.contains("m")) config.fixed.m = p["m"].get<int>();
        if (p.contains("radius")) config.fixed.radius = p["radius"].get<double>();
      }
    } catch (const nlohmann::json::exception& e) {
      throw Error(Errc::BadQuery, std::string("malformed generate request: ") + e.what());
    }
    if (config.n > kMaxOrder) throw Error(Errc::OrderTooLarge, "generators support n <= 12");
    std::shared_ptr<const Atlas> truth;
    if (config.n <= kMaxEnumerationOrder && atlas_exists(options_.atlas_dir, config.n)) truth = atlas(config.n);
    const Sample sample = sample_batch(config, truth ? &truth->histogram : nullptr, options_.workers);
    Json graphs = Json::array();
    Json stats = Json::array();
    for (std::size_t i = 0; i < sample.graphs.size(); ++i) {
      graphs.push_back(encode_graph6(sample.graphs[i]));
      stats.push_back(to_json(sample.stats[i]));
    }
    Json out{{"model", model_name(config.model)}, {"n", config.n}, {"count", config.count}, {"seed", config.seed},
             {"graphs", graphs}, {"stats", stats}};
    out["coverage"] = truth ? to_json(bounding_box_ratio(sample.stats, truth->stats())) : Json(nullptr);
    return {200, out};
  } catch (const Error& e) {
    return api_error(e);
  }
}

void Service::install_routes() {
  auto& svr = *server_;
  auto reply = [](httplib::Response& res, const ApiResult& r) {
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
  };
  svr.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                           {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                           {"Access-Control-Allow-Headers", "Content-Type"}});
  svr.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
  svr.Get("/api/atlases", [this, reply](const httplib::Request&, httplib::Response& res) { reply(res, list_atlases()); });
  svr.Get("/api/presets", [this, reply](const httplib::Request&, httplib::Response& res) { reply(res, presets()); });
  svr.Get(R"(/api/atlases/(\d+)/correlations)", [this, reply](const httplib::Request& req, httplib::Response& res) {
    try {
      const int n = std::stoi(req.matches[1]);
      const std::string source = req.has_param("source") ? req.get_param_value("source") : "atlas";
      std::optional<double> rate;
      if (req.has_param("rate")) rate = std::stod(req.get_param_value("rate"));
      const std::uint64_t seed = req.has_param("seed") ? std::stoull(req.get_param_value("seed")) : 0;
      reply(res, correlations(n, source, rate, seed));
    } catch (const std::logic_error&) {
      reply(res, api_error(Error(Errc::BadQuery, "malformed numeric parameter")));
    }
  });
  svr.Post(R"(/api/atlases/(\d+)/query)", [this, reply](const httplib::Request& req, httplib::Response& res) {
    try {
      reply(res, query(std::stoi(req.matches[1]), req.body));
    } catch (const std::out_of_range&) {
      reply(res, api_error(Error(Errc::MissingAtlas, "order out of range")));
    }
  });
  svr.Post("/api/generate", [this, reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, generate(req.body));
  });
  svr.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
    std::string message = "internal error";
    try {
      std::rethrow_exception(ep);
    } catch (const std::exception& e) {
      message = e.what();
    } catch (...) {
    }
    res.status = 500;
    res.set_content(api_body("Internal", message, 500).dump(), "application/json");
  });
  svr.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (!res.body.empty()) return httplib::Server::HandlerResponse::Unhandled;
    const std::string code = res.status == 404 ? "MissingAtlas" : "BadQuery";
    res.set_content(api_body(code, "no such endpoint", res.status).dump(), "application/json");
    return httplib::Server::HandlerResponse::Handled;
  });
}

int Service::bind(const std::string& host, int port) {
  server_ = std::make_unique<httplib::Server>();
  install_routes();
  if (port == 0) {
    port_ = server_->bind_to_any_port(host);
  } else {
    port_ = server_->bind_to_port(host, port) ? port : -1;
  }
  return port_;
}

bool Service::serve_bound() { return server_ && server_->listen_after_bind(); }

bool Service::listen(const std::string& host, int port) { return bind(host, port) > 0 && serve_bound(); }

void Service::wait_until_ready() const {
  if (server_) server_->wait_until_ready();
}

void Service::stop() {
  if (server_) server_->stop();
}

}  // namespace samestats
