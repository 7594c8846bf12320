#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "samestats/atlas.hpp"
#include "samestats/report_json.hpp"

namespace httplib {
class Server;
}

namespace samestats {

struct ServiceOptions {
  std::filesystem::path atlas_dir;
  std::size_t max_generate = 100000;
  std::size_t max_scatter_points = 20000;
  unsigned workers = 0;
};

struct ApiResult {
  int status = 200;
  Json body;
};

// Request handlers are plain functions of their inputs so identical requests
// yield byte-identical bodies. Atlases are loaded lazily and shared read-only.
class Service {
 public:
  explicit Service(ServiceOptions options);
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  ApiResult list_atlases() const;
  ApiResult presets() const;
  ApiResult correlations(int n, const std::string& source, std::optional<double> rate, std::uint64_t seed);
  ApiResult query(int n, const std::string& body);
  ApiResult generate(const std::string& body);

  // Binds and serves until stop(). port 0 picks a free port; the bound port
  // is available from port() once ready() returns.
  bool listen(const std::string& host, int port);
  int bind(const std::string& host, int port);
  bool serve_bound();
  void wait_until_ready() const;
  void stop();
  int port() const noexcept { return port_; }

 private:
  std::shared_ptr<const Atlas> atlas(int n);
  void install_routes();

  ServiceOptions options_;
  std::mutex mutex_;
  std::map<int, std::shared_ptr<const Atlas>> cache_;
  std::unique_ptr<httplib::Server> server_;
  int port_ = 0;
};

// Maps a domain error onto the API error shape and HTTP status.
ApiResult api_error(const Error& e);

}  // namespace samestats
