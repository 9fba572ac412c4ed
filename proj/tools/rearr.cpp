// Command-line front end. Exit codes: 0 success, 1 negative verdict,
// 2 usage or input error.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "rearr/api.hpp"
#include "rearr/service.hpp"
#include "rearr/session.hpp"

using namespace rearr;

namespace {

struct Output {
  std::string path;
  std::string format = "json";

  void write(const std::string& text) const {
    if (path.empty() || path == "-") {
      std::cout << text << '\n';
      return;
    }
    std::ofstream out(path);
    if (!out) throw InputError("bad_output", "cannot write " + path);
    out << text << '\n';
  }
  void json(const Json& j) const { write(j.dump(2)); }
};

/// Inline JSON when the argument starts with '[' or '{', a file path otherwise.
Json load(const std::string& arg) {
  if (!arg.empty() && (arg.front() == '[' || arg.front() == '{')) return parse_json_text(arg, "argument");
  return read_json_file(arg);
}

/// "identity", "figiel:M" or a JSON document.
Json tau_spec(const std::string& arg) {
  if (arg == "identity") return Json("identity");
  if (arg.rfind("figiel:", 0) == 0) return Json{{"kind", "figiel"}, {"m", std::stoll(arg.substr(7))}};
  return load(arg);
}

std::string csv_rows(const std::string& header, const std::vector<std::vector<std::string>>& rows) {
  std::ostringstream out;
  out << header;
  for (const auto& row : rows) {
    out << '\n';
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
  }
  return out.str();
}

void add_output(CLI::App* cmd, Output& out, bool csv = false) {
  cmd->add_option("--out,-o", out.path, "Write the report to this file instead of stdout");
  if (csv) cmd->add_option("--format", out.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
}

std::string board(const ColouredCollection& c) {
  std::string row;
  for (std::int64_t k = 1; k <= (std::int64_t{1} << c.level()); ++k) {
    auto it = c.members().find(k);
    if (it == c.members().end()) {
      row += '.';
    } else {
      row += it->second < 10 ? static_cast<char>('0' + it->second) : static_cast<char>('a' + it->second - 10);
    }
  }
  return row;
}

int play(const ColouredCollection& initial, const EngineConfig& config) {
  Game game = Game::create(initial, config);
  std::cout << "level " << initial.level() << ", d = " << initial.colours() << ", eta = " << to_string(initial.eta())
            << "\nEnter indices k of level-j cells to add (e.g. '3 7'), 'hint k ...', or 'quit'.\n";
  std::string line;
  while (!game.finished()) {
    std::cout << board(game.collection()) << "\nA> " << std::flush;
    if (!std::getline(std::cin, line)) break;
    std::istringstream words(line);
    std::string first;
    if (!(words >> first)) continue;
    if (first == "quit" || first == "q") break;
    const bool want_hint = first == "hint";
    IntervalCollection add;
    try {
      if (!want_hint) add.insert(DyadicInterval(initial.level(), std::stoll(first)));
      std::int64_t k;
      while (words >> k) add.insert(DyadicInterval(initial.level(), k));
      if (want_hint) {
        const Hint h = hint(game, add);
        std::cout << "previsible: " << (h.previsibility.ok ? "yes" : "no")
                  << ", valid colourings: " << (h.brute_force.refused ? "over cap" : std::to_string(h.brute_force.count))
                  << '\n';
        continue;
      }
      const MoveRecord& move = game.play(add);
      std::cout << "B (" << move.method << "):";
      for (int c : move.colours) std::cout << ' ' << c;
      std::cout << '\n';
    } catch (const std::exception& e) {
      std::cout << "rejected: " << e.what() << '\n';
    }
  }
  std::cout << board(game.collection()) << "\nstatus: " << to_string(game.status()) << '\n';
  if (!game.history().empty() && !game.history().back().reason.empty()) {
    std::cout << game.history().back().reason << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dyadic rearrangements, supporting trees, Haar numerics and the colouring game"};
  app.require_subcommand(1);
  Output out;
  int verdict = 0;
  std::function<void()> action;

  // shift ---------------------------------------------------------------------
  auto* shift = app.add_subcommand("shift", "Shift sequences: N_j, Semenov constant, decompositions, trees");
  shift->require_subcommand(1);
  std::string m_arg;
  int depth = 0;
  bool with_sets = false;
  auto shift_request = [&]() {
    Json req{{"m", load(m_arg)}};
    if (depth > 0) req["depth"] = depth;
    return req;
  };
  auto shift_cmd = [&](const char* name, const char* help, bool csv = false) {
    auto* cmd = shift->add_subcommand(name, help);
    cmd->add_option("--m", m_arg, "JSON array [m_1, ..., m_J] (file or inline)")->required();
    cmd->add_option("--depth", depth, "Truncation depth (default: length of the sequence)");
    add_output(cmd, out, csv);
    return cmd;
  };
  shift_cmd("nj", "Occupation counts N_j", true)->callback([&] {
    action = [&] {
      const Json r = api::shift_nj(shift_request());
      if (out.format == "csv") {
        std::vector<std::vector<std::string>> rows;
        const auto nj = r["nj"].get<std::vector<std::int64_t>>();
        for (std::size_t j = 0; j < nj.size(); ++j) rows.push_back({std::to_string(j), std::to_string(nj[j])});
        out.write(csv_rows("j,nj", rows));
      } else {
        out.json(r);
      }
    };
  });
  shift_cmd("semenov", "Semenov constant max |τ(Q(I))*| / |I|")->callback([&] {
    action = [&] { out.json(api::shift_semenov(shift_request())); };
  });
  shift_cmd("decompose", "Band decomposition")->callback([&] {
    action = [&] {
      const Json r = api::shift_decompose(shift_request());
      verdict = r["applicable"].get<bool>() && r["check"]["ok"].get<bool>() ? 0 : 1;
      out.json(r);
    };
  });
  shift_cmd("select-levels", "Sparse level selection")->callback([&] {
    action = [&] {
      const Json r = api::shift_select_levels(shift_request());
      verdict = r["ok"].get<bool>() ? 0 : 1;
      out.json(r);
    };
  });
  shift_cmd("tree", "Build and certify a supporting tree")
      ->callback([&] {
        action = [&] {
          Json req = shift_request();
          req["sets"] = with_sets;
          const Json r = api::tree_report(req);
          verdict = r["ok"].get<bool>() ? 0 : 1;
          out.json(r);
        };
      })
      ->add_flag("--sets", with_sets, "Include the map I -> A(I) for every piece");

  // haar ----------------------------------------------------------------------
  auto* haar = app.add_subcommand("haar", "Haar numerics and norm estimates");
  haar->require_subcommand(1);
  std::string tau_arg = "identity";
  double p = 2.0;
  int haar_depth = 8;
  std::size_t budget = 200;
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  std::vector<std::int64_t> ms{1, 2, 4, 8, 16};
  std::string blocks_arg;
  int piece = 0;

  auto* norm = haar->add_subcommand("norm", "Lower bound for the operator norm on L^p");
  norm->add_option("--tau", tau_arg, "identity, figiel:M or a JSON rearrangement");
  norm->add_option("--p", p, "Exponent p > 1");
  norm->add_option("--depth", haar_depth, "Grid depth");
  norm->add_option("--budget", budget, "Number of search steps");
  norm->add_option("--seed", seed, "Random seed");
  add_output(norm, out);
  norm->callback([&] {
    action = [&] {
      out.json(api::norm_report(
          Json{{"tau", tau_spec(tau_arg)}, {"p", p}, {"depth", haar_depth}, {"budget", budget}, {"seed", seed}}));
    };
  });

  auto* trend = haar->add_subcommand("figiel-trend", "Norm lower bounds for τ_m over several m");
  trend->add_option("--ms", ms, "Shift amounts")->delimiter(',');
  trend->add_option("--p", p, "Exponent p > 1");
  trend->add_option("--depth", haar_depth, "Grid depth");
  trend->add_option("--budget", budget, "Search steps per m");
  trend->add_option("--seed", seed, "Random seed");
  add_output(trend, out, true);
  trend->callback([&] {
    action = [&] {
      const Json r = api::figiel_trend(
          Json{{"ms", ms}, {"p", p}, {"depth", haar_depth}, {"budget", budget}, {"seed", seed}});
      if (out.format == "csv") {
        std::vector<std::vector<std::string>> rows;
        for (const Json& row : r["rows"]) {
          rows.push_back({row["m"].dump(), row["best_ratio"].dump(), row["evaluations"].dump()});
        }
        out.write(csv_rows("m,best_ratio,evaluations", rows));
      } else {
        out.json(r);
      }
    };
  });

  auto* blocked = haar->add_subcommand("blocked", "Equivalence constants of a blocked Haar system");
  blocked->add_option("--blocks", blocks_arg, "JSON [{\"I\": {j,k}, \"members\": [...]}, ...]")->required();
  blocked->add_option("--tau", tau_arg, "identity, figiel:M or a JSON rearrangement");
  blocked->add_option("--p", p, "Exponent p > 1");
  blocked->add_option("--trials", trials, "Random coefficient vectors");
  blocked->add_option("--seed", seed, "Random seed");
  add_output(blocked, out);
  blocked->callback([&] {
    action = [&] {
      const Json r = api::blocked_report(
          Json{{"blocks", load(blocks_arg)}, {"tau", tau_spec(tau_arg)}, {"p", p}, {"trials", trials}, {"seed", seed}});
      verdict = r["accepted"].get<bool>() ? 0 : 1;
      out.json(r);
    };
  });

  auto* restricted = haar->add_subcommand("restricted", "Isomorphism ratios on one supporting-tree piece");
  restricted->add_option("--m", m_arg, "JSON shift sequence (file or inline)")->required();
  restricted->add_option("--depth", depth, "Truncation depth");
  restricted->add_option("--piece", piece, "Index of the piece");
  restricted->add_option("--p", p, "Exponent p > 1");
  restricted->add_option("--trials", trials, "Random coefficient vectors");
  restricted->add_option("--seed", seed, "Random seed");
  add_output(restricted, out);
  restricted->callback([&] {
    action = [&] {
      Json req = shift_request();
      req.update(Json{{"p", p}, {"trials", trials}, {"seed", seed}, {"piece", piece}});
      const Json r = api::restricted_report(req);
      verdict = r["accepted"].get<bool>() ? 0 : 1;
      out.json(r);
    };
  });

  // game ----------------------------------------------------------------------
  auto* game = app.add_subcommand("game", "The (η,d)-homogeneous colouring game");
  game->require_subcommand(1);
  std::string state_arg, u_arg, log_arg;
  bool reduced = false, literal = false, verify = false;
  int a = 1, n = 2, j = 0, d = 2;
  std::string eta_arg = "1/2";
  std::uint64_t cap = std::uint64_t{1} << 20;
  std::size_t limit = 4096;
  long long timeout_ms = 10000;

  auto state_request = [&]() {
    Json req{{"state", load(state_arg)}};
    if (!u_arg.empty()) req["u"] = load(u_arg);
    return req;
  };

  auto* check = game->add_subcommand("check", "Test (η,d)-homogeneity");
  check->add_option("--state", state_arg, "JSON {j, d, eta, members}")->required();
  check->add_flag("--reduced", reduced, "Only test levels <= j - α");
  add_output(check, out);
  check->callback([&] {
    action = [&] {
      Json req = state_request();
      req["reduced"] = reduced;
      const Json r = api::game_check(req);
      verdict = r["ok"].get<bool>() ? 0 : 1;
      out.json(r);
    };
  });

  auto* previsible = game->add_subcommand("previsible", "Test d-previsibility of U with respect to C");
  previsible->add_option("--state", state_arg, "JSON {j, d, eta, members}")->required();
  previsible->add_option("--u", u_arg, "JSON array of intervals")->required();
  previsible->add_flag("--literal", literal, "One-sided definition only");
  add_output(previsible, out);
  previsible->callback([&] {
    action = [&] {
      Json req = state_request();
      req["literal"] = literal;
      const Json r = api::game_previsible(req);
      verdict = r["ok"].get<bool>() ? 0 : 1;
      out.json(r);
    };
  });

  auto* extend = game->add_subcommand("extend", "Player B's colouring of U");
  extend->add_option("--state", state_arg, "JSON {j, d, eta, members}")->required();
  extend->add_option("--u", u_arg, "JSON array of intervals")->required();
  add_output(extend, out);
  extend->callback([&] {
    action = [&] {
      const Json r = api::game_extend(state_request());
      verdict = r["applicable"].get<bool>() ? 0 : 1;
      out.json(r);
    };
  });

  auto* oracle = game->add_subcommand("oracle", "Enumerate every valid colouring of U");
  oracle->add_option("--state", state_arg, "JSON {j, d, eta, members}")->required();
  oracle->add_option("--u", u_arg, "JSON array of intervals")->required();
  oracle->add_option("--cap", cap, "Refuse when d^|U| exceeds this");
  oracle->add_option("--limit", limit, "Maximum number of listed colourings");
  add_output(oracle, out);
  oracle->callback([&] {
    action = [&] {
      Json req = state_request();
      req["cap"] = cap;
      req["limit"] = limit;
      out.json(api::game_oracle(req));
    };
  });

  auto* adversary = game->add_subcommand("adversary", "Configuration in which Player A wins");
  adversary->add_option("-a", a, "d = 2^a");
  adversary->add_option("-n", n, "η = 1/n");
  adversary->add_option("-j", j, "Level (default n + a + 1)");
  adversary->add_flag("--verify", verify, "Enumerate every stage and check the terminal position");
  add_output(adversary, out);
  adversary->callback([&] {
    action = [&] {
      Json req{{"a", a}, {"n", n}, {"verify", verify}};
      if (j > 0) req["j"] = j;
      const Json r = api::game_adversary(req);
      if (verify) verdict = r["verified"].get<bool>() ? 0 : 1;
      out.json(r);
    };
  });

  auto* play_cmd = game->add_subcommand("play", "Play Player A in the terminal against the engine");
  play_cmd->add_option("--state", state_arg, "Initial coloured collection (default: empty)");
  play_cmd->add_option("-j", j, "Level when no state is given");
  play_cmd->add_option("-d", d, "Number of colours when no state is given");
  play_cmd->add_option("--eta", eta_arg, "η as p/q when no state is given");
  play_cmd->add_option("--cap", cap, "Brute-force cap");
  play_cmd->add_option("--timeout-ms", timeout_ms, "Brute-force timeout");
  play_cmd->callback([&] {
    action = [&] {
      ColouredCollection initial = state_arg.empty()
                                       ? ColouredCollection(j > 0 ? j : 3, d, rational_from_json(Json(eta_arg)))
                                       : coloured_from_json(load(state_arg));
      verdict = play(initial, EngineConfig{cap, std::chrono::milliseconds(timeout_ms)});
    };
  });

  auto* replay = game->add_subcommand("replay", "Recompute a session log and compare with the logged state");
  replay->add_option("--log", log_arg, "Session event log (JSON lines)")->required();
  replay->add_option("--cap", cap, "Brute-force cap");
  replay->add_option("--timeout-ms", timeout_ms, "Brute-force timeout");
  add_output(replay, out);
  replay->callback([&] {
    action = [&] {
      const EngineConfig config{cap, std::chrono::milliseconds(timeout_ms)};
      const auto events = read_event_log(log_arg);
      const ReplayCheck check = verify_replay(events, config);
      const SessionRecord s = replay_events(events, config);
      Json r = session_json(s);
      r["replay"] = {{"identical", check.identical}, {"detail", check.detail}};
      verdict = check.identical ? 0 : 1;
      out.json(r);
    };
  });

  // serve ---------------------------------------------------------------------
  auto* serve = app.add_subcommand("serve", "Run the HTTP game service");
  ServiceConfig service;
  std::string data_dir;
  serve->add_option("--port", service.port, "Port (env PORT)");
  serve->add_option("--host", service.host, "Bind address");
  serve->add_option("--data-dir", data_dir, "Session log directory (env DATA_DIR)");
  serve->add_option("--cap", service.engine.cap, "Brute-force cap (env ENGINE_CAP)");
  serve->add_option("--timeout-ms", timeout_ms, "Brute-force timeout (env ENGINE_TIMEOUT_MS)");
  serve->preparse_callback([&](std::size_t) {
    service = service_config_from_env();
    timeout_ms = service.engine.timeout.count();
  });
  serve->callback([&] {
    action = [&] {
      if (!data_dir.empty()) service.data_dir = data_dir;
      service.engine.timeout = std::chrono::milliseconds(timeout_ms);
      Service server(service);
      const int port = server.bind();
      std::cerr << "listening on " << service.host << ":" << port << std::endl;
      verdict = server.listen() ? 0 : 2;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  try {
    if (action) action();
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return verdict;
}
