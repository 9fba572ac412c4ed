#include "rearr/service.hpp"

#include <cstdlib>

#include <httplib.h>

#include "rearr/api.hpp"
#include "rearr/session.hpp"

namespace rearr {

ServiceConfig service_config_from_env() {
  ServiceConfig config;
  auto env = [](const char* name) -> std::optional<std::string> {
    const char* value = std::getenv(name);
    if (value == nullptr || *value == '\0') return std::nullopt;
    return std::string(value);
  };
  try {
    if (auto v = env("PORT")) config.port = std::stoi(*v);
    if (auto v = env("DATA_DIR")) config.data_dir = *v;
    if (auto v = env("ENGINE_CAP")) config.engine.cap = std::stoull(*v);
    if (auto v = env("ENGINE_TIMEOUT_MS")) config.engine.timeout = std::chrono::milliseconds(std::stoll(*v));
  } catch (const std::exception&) {
    throw DomainError("malformed PORT, ENGINE_CAP or ENGINE_TIMEOUT_MS");
  }
  return config;
}

namespace {

void send(httplib::Response& res, int status, const Json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& code, const std::string& message) {
  send(res, status, Json{{"error", {{"code", code}, {"message", message}}}});
}

Json body_of(const httplib::Request& req) {
  if (req.body.empty()) return Json::object();
  return parse_json_text(req.body, "request body");
}

/// "3:1,3:5" -> {I(3,1), I(3,5)}.
IntervalCollection parse_add_query(const std::string& text) {
  IntervalCollection out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string::npos) end = text.size();
    const std::string item = text.substr(pos, end - pos);
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw InputError("bad_request", "hint intervals are written j:k");
    try {
      out.insert(DyadicInterval(std::stoi(item.substr(0, colon)), std::stoll(item.substr(colon + 1))));
    } catch (const std::invalid_argument&) {
      throw InputError("bad_request", "hint intervals are written j:k");
    }
    pos = end + 1;
  }
  return out;
}

using Handler = std::function<void(const httplib::Request&, httplib::Response&)>;

/// Maps exceptions to JSON error payloads.
Handler guarded(Handler inner) {
  return [inner = std::move(inner)](const httplib::Request& req, httplib::Response& res) {
    try {
      inner(req, res);
    } catch (const SessionNotFound& e) {
      send_error(res, 404, "not_found", e.what());
    } catch (const InputError& e) {
      send_error(res, 400, e.code(), e.what());
    } catch (const nlohmann::json::exception& e) {
      send_error(res, 400, "bad_request", e.what());
    } catch (const MoveRejected& e) {
      send_error(res, 422, "invalid_move", e.what());
    } catch (const NotFullyColouredError& e) {
      send_error(res, 422, "not_fully_coloured", e.what());
    } catch (const DomainError& e) {
      send_error(res, 422, "domain_error", e.what());
    } catch (const DefectError& e) {
      send_error(res, 500, "defect", e.what());
    } catch (const std::exception& e) {
      send_error(res, 500, "internal", e.what());
    }
  };
}

}  // namespace

struct Service::Impl {
  explicit Impl(ServiceConfig c) : config(std::move(c)), store(config.data_dir, config.engine) {}

  ServiceConfig config;
  SessionStore store;
  httplib::Server server;

  void routes() {
    server.set_default_headers({{"Access-Control-Allow-Origin", config.cors_origin},
                                {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                                {"Access-Control-Allow-Headers", "Content-Type"}});
    server.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
    server.set_error_handler([](const httplib::Request& req, httplib::Response& res) {
      if (!res.body.empty()) return httplib::Server::HandlerResponse::Unhandled;
      send_error(res, res.status, res.status == 404 ? "not_found" : "http_error",
                 "no route for " + req.method + " " + req.path);
      return httplib::Server::HandlerResponse::Handled;
    });

    server.Get("/health", [](const httplib::Request&, httplib::Response& res) {
      send(res, 200, Json{{"status", "ok"}});
    });

    server.Post("/games", guarded([this](const httplib::Request& req, httplib::Response& res) {
      const Json body = body_of(req);
      ColouredCollection initial(body.at("j").get<int>(), body.at("d").get<int>(),
                                 body.contains("eta") ? rational_from_json(body.at("eta")) : Rational(1, 2));
      if (body.value("round_robin", false)) {
        initial = round_robin(collection_from_json(body.value("initial", Json::array())), initial.level(),
                              initial.colours(), initial.eta());
      } else {
        Json state{{"j", initial.level()}, {"d", initial.colours()}, {"eta", to_json(initial.eta())},
                   {"members", body.value("initial", Json::array())}};
        initial = coloured_from_json(state);
      }
      const std::string id = store.create(initial);
      send(res, 201, store.with_session(id, [](SessionRecord& s) { return session_json(s); }));
    }));

    server.Get("/games/:id", guarded([this](const httplib::Request& req, httplib::Response& res) {
      send(res, 200, store.with_session(req.path_params.at("id"), [](SessionRecord& s) { return session_json(s); }));
    }));

    server.Post("/games/:id/moves", guarded([this](const httplib::Request& req, httplib::Response& res) {
      const Json body = body_of(req);
      const IntervalCollection add = collection_from_json(body.at("add"));
      int status = 200;
      Json out = store.with_session(req.path_params.at("id"), [&](SessionRecord& s) {
        if (s.game.finished()) {
          status = 409;
          return Json{{"error", {{"code", "game_over"}, {"message", "game is " + to_string(s.game.status())}}}};
        }
        const MoveRecord& move = s.game.play(add);
        store.record_move(s, move);
        Json reply = session_json(s);
        reply["reply"] = to_json(move);
        if (move.outcome == GameStatus::Undecided) reply["undecided"] = {{"reason", move.reason}};
        return reply;
      });
      send(res, status, out);
    }));

    server.Get("/games/:id/hint", guarded([this](const httplib::Request& req, httplib::Response& res) {
      if (!req.has_param("add")) throw InputError("bad_request", "query parameter add=j:k,... is required");
      const IntervalCollection add = parse_add_query(req.get_param_value("add"));
      send(res, 200, store.with_session(req.path_params.at("id"), [&](SessionRecord& s) {
        return to_json(hint(s.game, add));
      }));
    }));

    server.Post("/analysis/shift", guarded([](const httplib::Request& req, httplib::Response& res) {
      send(res, 200, api::shift_report(body_of(req)));
    }));
    server.Post("/analysis/tree", guarded([](const httplib::Request& req, httplib::Response& res) {
      send(res, 200, api::tree_report(body_of(req)));
    }));
    server.Post("/analysis/norm", guarded([](const httplib::Request& req, httplib::Response& res) {
      send(res, 200, api::norm_report(body_of(req)));
    }));
  }
};

Service::Service(ServiceConfig config) : impl_(std::make_unique<Impl>(std::move(config))) { impl_->routes(); }

Service::~Service() { stop(); }

int Service::bind() {
  if (impl_->config.port == 0) {
    impl_->config.port = impl_->server.bind_to_any_port(impl_->config.host);
  } else if (!impl_->server.bind_to_port(impl_->config.host, impl_->config.port)) {
    throw std::runtime_error("cannot bind port " + std::to_string(impl_->config.port));
  }
  return impl_->config.port;
}

bool Service::listen() { return impl_->server.listen_after_bind(); }

void Service::stop() {
  if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

void Service::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace rearr
