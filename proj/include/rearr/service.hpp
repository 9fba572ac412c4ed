// HTTP/JSON game service.
//
//   POST /games                 {j, d, eta, initial: [{j,k,colour}], round_robin?}
//   GET  /games/{id}
//   POST /games/{id}/moves      {add: [{j,k}]}
//   GET  /games/{id}/hint?add=j:k,j:k
//   POST /analysis/shift | /analysis/tree | /analysis/norm
//   GET  /health
//
// Errors are {"error": {"code", "message"}} with 400, 404, 409, 422 or 500.

#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "rearr/game.hpp"

namespace rearr {

struct ServiceConfig {
  std::string host = "0.0.0.0";
  int port = 8080;
  std::optional<std::filesystem::path> data_dir;
  EngineConfig engine;
  std::string cors_origin = "*";
};

/// PORT, DATA_DIR, ENGINE_CAP and ENGINE_TIMEOUT_MS override the defaults.
ServiceConfig service_config_from_env();

class Service {
 public:
  explicit Service(ServiceConfig config);
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  /// Binds the configured port (0 picks a free one) and returns it.
  int bind();
  /// Serves until stop() is called. Requires bind().
  bool listen();
  void stop();
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace rearr
