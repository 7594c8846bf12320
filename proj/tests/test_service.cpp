#include <unistd.h>

#include <filesystem>
#include <thread>

#include "doctest.h"
#include "httplib.h"
#include "samestats/atlas.hpp"
#include "samestats/graph6.hpp"
#include "samestats/service.hpp"

using namespace samestats;
namespace fs = std::filesystem;

namespace {

// Removed when the test binary exits.
struct ScratchDir {
  fs::path path = fs::temp_directory_path() / ("samestats_service_" + std::to_string(::getpid()));
  ScratchDir() {
    fs::remove_all(path);
    fs::create_directories(path);
    build_atlas(5, path);
    build_atlas(7, path);
  }
  ~ScratchDir() { fs::remove_all(path); }
};

fs::path fixture_dir() {
  static const ScratchDir dir;
  return dir.path;
}

// One server on a free port for the whole binary.
struct Server {
  Service service;
  std::thread thread;
  explicit Server(const fs::path& dir) : service(ServiceOptions{dir, 1000, 20000, 1}) {
    REQUIRE(service.bind("127.0.0.1", 0) > 0);
    thread = std::thread([this] { service.serve_bound(); });
    service.wait_until_ready();
  }
  ~Server() {
    service.stop();
    thread.join();
  }
  httplib::Client client() const { return httplib::Client("127.0.0.1", service.port()); }
};

Server& server() {
  static Server s(fixture_dir());
  return s;
}

Json parse(const httplib::Result& r) {
  REQUIRE(r);
  return Json::parse(r->body);
}

httplib::Result post(const std::string& path, const Json& body) {
  return server().client().Post(path, body.dump(), "application/json");
}

}  // namespace

TEST_CASE("atlas listing") {
  auto r = server().client().Get("/api/atlases");
  REQUIRE(r);
  CHECK(r->status == 200);
  CHECK(r->get_header_value("Access-Control-Allow-Origin") == "*");
  const Json body = Json::parse(r->body);
  REQUIRE(body.size() == 2);
  CHECK(body[0]["n"] == 5);
  CHECK(body[0]["count"] == 34);
  CHECK(body[1]["count"] == 1044);

  const fs::path empty = fs::temp_directory_path() / ("samestats_service_empty_" + std::to_string(::getpid()));
  fs::create_directories(empty);
  Service bare(ServiceOptions{empty});
  CHECK(bare.list_atlases().body == Json::array());
  fs::remove_all(empty);
}

TEST_CASE("presets listing") {
  const Json body = parse(server().client().Get("/api/presets"));
  CHECK(body.size() == 4);
  CHECK(body[0]["name"] == "assortativity-variability");
}

TEST_CASE("query endpoint") {
  auto r = post("/api/atlases/5/query", Json{{"vary", "den"}});
  REQUIRE(r);
  CHECK(r->status == 200);
  const Json body = Json::parse(r->body);
  CHECK(body["total_matches"] == 34);
  CHECK(body["slots"].size() == 10);
  std::size_t sum = 0;
  for (const auto& s : body["slots"]) {
    sum += s["count"].get<std::size_t>();
    if (s["count"] == 0) {
      CHECK(s["exemplar"].is_null());
      continue;
    }
    const Graph g = decode_graph6(s["exemplar"].get<std::string>());
    CHECK(s["adjacency"].size() == 5);
    for (int u = 0; u < 5; ++u) {
      std::vector<int> expected;
      for (int v = 0; v < 5; ++v)
        if (g.has_edge(u, v)) expected.push_back(v);
      CHECK(s["adjacency"][static_cast<std::size_t>(u)].get<std::vector<int>>() == expected);
    }
  }
  CHECK(sum == 34);

  const Json q{{"vary", "r"}, {"constraints", Json::array({{{"stat", "den"}, {"min", 0.4}, {"max", 0.6}}})}};
  const auto a = post("/api/atlases/7/query", q);
  const auto b = post("/api/atlases/7/query", q);
  REQUIRE(a);
  REQUIRE(b);
  CHECK(a->body == b->body);
}

TEST_CASE("query errors") {
  const Json bad{{"vary", "r"}, {"constraints", Json::array({{{"stat", "gcc"}, {"min", 0.6}, {"max", 0.5}}})}};
  auto r = post("/api/atlases/7/query", bad);
  REQUIRE(r);
  CHECK(r->status == 400);
  Json body = Json::parse(r->body);
  CHECK(body["code"] == "BadQuery");
  CHECK(body["status"] == 400);
  CHECK_FALSE(body["message"].get<std::string>().empty());

  r = post("/api/atlases/99/query", Json{{"vary", "r"}});
  REQUIRE(r);
  CHECK(r->status == 404);
  CHECK(Json::parse(r->body)["code"] == "MissingAtlas");

  r = post("/api/atlases/6/query", Json{{"vary", "r"}});
  REQUIRE(r);
  CHECK(r->status == 404);

  r = server().client().Post("/api/atlases/5/query", "{not json", "application/json");
  REQUIRE(r);
  CHECK(r->status == 400);

  r = post("/api/atlases/5/query", Json{{"vary", "betweenness"}});
  REQUIRE(r);
  CHECK(r->status == 400);
}

TEST_CASE("correlations endpoint") {
  Json body = parse(server().client().Get("/api/atlases/7/correlations"));
  CHECK(body["atlas"]["sample_size"] == 1044);
  CHECK(body["scatter"]["atlas"]["points"].size() == 1044);
  CHECK(body["scatter"]["atlas"]["points"][0].size() == 10);
  CHECK_FALSE(body.contains("overlay"));

  auto r = server().client().Get("/api/atlases/7/correlations?source=er-half&rate=0.1&seed=3");
  REQUIRE(r);
  CHECK(r->status == 200);
  body = Json::parse(r->body);
  CHECK(body["overlay"]["count"] == 104);
  const auto again = server().client().Get("/api/atlases/7/correlations?source=er-half&rate=0.1&seed=3");
  REQUIRE(again);
  CHECK(again->body == r->body);

  r = server().client().Get("/api/atlases/9/correlations");
  REQUIRE(r);
  CHECK(r->status == 404);
  r = server().client().Get("/api/atlases/7/correlations?source=kronecker");
  REQUIRE(r);
  CHECK(r->status == 400);
}

TEST_CASE("scatter rows are down-sampled") {
  Service small(ServiceOptions{fixture_dir(), 1000, 100, 1});
  const Json body = small.correlations(7, "atlas", std::nullopt, 0).body;
  CHECK(body["scatter"]["atlas"]["stride"] == 11);
  CHECK(body["scatter"]["atlas"]["returned"].get<int>() <= 100);
  CHECK(body["atlas"]["sample_size"] == 1044);
}

TEST_CASE("generate endpoint") {
  auto r = post("/api/generate", Json{{"model", "ba"}, {"n", 9}, {"count", 50}, {"seed", 1}});
  REQUIRE(r);
  CHECK(r->status == 200);
  Json body = Json::parse(r->body);
  CHECK(body["graphs"].size() == 50);
  CHECK(body["coverage"].is_null());
  for (const auto& s : body["stats"]) {
    const int m = s["m"];
    CHECK((m == 8 || m == 14 || m == 18 || m == 20));
  }

  body = parse(post("/api/generate", Json{{"model", "er"}, {"n", 9}, {"count", 3}, {"params", {{"p", 1.0}}}}));
  for (const auto& g : body["graphs"]) CHECK(decode_graph6(g.get<std::string>()) == families::complete(9));

  body = parse(post("/api/generate", Json{{"model", "er-half"}, {"n", 7}, {"count", 20}, {"seed", 2}}));
  CHECK(body["coverage"]["volume_ratio"].get<double>() >= 0.0);

  r = post("/api/generate", Json{{"model", "er"}, {"n", 9}, {"count", 1e9}});
  REQUIRE(r);
  CHECK(r->status == 400);
  CHECK(Json::parse(r->body)["code"] == "BadQuery");

  r = post("/api/generate", Json{{"model", "er"}, {"n", 13}, {"count", 5}});
  REQUIRE(r);
  CHECK(r->status == 400);
  CHECK(Json::parse(r->body)["code"] == "OrderTooLarge");

  r = post("/api/generate", Json{{"model", "ba"}, {"n", 9}, {"count", 5}, {"params", {{"m", 12}}}});
  REQUIRE(r);
  CHECK(r->status == 400);

  const Json req{{"model", "ws"}, {"n", 8}, {"count", 30}, {"seed", 9}};
  const auto a = post("/api/generate", req);
  const auto b = post("/api/generate", req);
  REQUIRE(a);
  REQUIRE(b);
  CHECK(a->body == b->body);
}

TEST_CASE("unknown routes and CORS preflight") {
  auto r = server().client().Get("/api/nothing");
  REQUIRE(r);
  CHECK(r->status == 404);
  CHECK(Json::parse(r->body).contains("code"));
  r = server().client().Options("/api/generate");
  REQUIRE(r);
  CHECK(r->status == 204);
}

TEST_CASE("in-process handlers match the wire") {
  Service local(ServiceOptions{fixture_dir(), 1000, 20000, 1});
  const auto wire = post("/api/atlases/5/query", Json{{"vary", "m"}});
  REQUIRE(wire);
  CHECK(local.query(5, Json{{"vary", "m"}}.dump()).body.dump() == wire->body);
}
