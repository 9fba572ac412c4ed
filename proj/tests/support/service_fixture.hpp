// Runs the HTTP service on a free port for the duration of a test.

#pragma once

#include <httplib.h>

#include <string>
#include <thread>

#include "rearr/json_io.hpp"
#include "rearr/service.hpp"

namespace fixture {

struct Response {
  int status = 0;
  rearr::Json body;
};

class RunningService {
 public:
  explicit RunningService(rearr::ServiceConfig config = {}) : service_(prepare(std::move(config))) {
    port_ = service_.bind();
    thread_ = std::thread([this] { service_.listen(); });
    service_.wait_until_ready();
    client_ = std::make_unique<httplib::Client>("127.0.0.1", port_);
  }
  ~RunningService() {
    service_.stop();
    thread_.join();
  }

  Response get(const std::string& path) { return wrap(client_->Get(path)); }
  Response post(const std::string& path, const rearr::Json& body) {
    return wrap(client_->Post(path, body.dump(), "application/json"));
  }
  Response post_raw(const std::string& path, const std::string& body) {
    return wrap(client_->Post(path, body, "application/json"));
  }
  httplib::Client& client() { return *client_; }

 private:
  static rearr::ServiceConfig prepare(rearr::ServiceConfig config) {
    config.host = "127.0.0.1";
    config.port = 0;
    return config;
  }
  static Response wrap(const httplib::Result& r) {
    Response out;
    if (!r) return out;
    out.status = r->status;
    out.body = r->body.empty() ? rearr::Json() : rearr::Json::parse(r->body);
    return out;
  }

  rearr::Service service_;
  int port_ = 0;
  std::thread thread_;
  std::unique_ptr<httplib::Client> client_;
};

}  // namespace fixture
