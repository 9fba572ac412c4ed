#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>

#include "rearr/colour_game.hpp"
#include "support/service_fixture.hpp"

using namespace rearr;
using fixture::RunningService;

namespace {

Json adversary_game(const AdversaryInstance& inst) {
  const Json state = to_json(inst.initial);
  return Json{{"j", state["j"]}, {"d", state["d"]}, {"eta", state["eta"]}, {"initial", state["members"]}};
}

Json add_one(const DyadicInterval& i) { return Json{{"add", Json::array({to_json(i)})}}; }

}  // namespace

TEST_CASE("health and CORS") {
  RunningService svc;
  const auto r = svc.get("/health");
  CHECK(r.status == 200);
  CHECK(r.body["status"] == "ok");
  const auto pre = svc.client().Options("/games");
  REQUIRE(pre);
  CHECK(pre->status == 204);
  CHECK(pre->get_header_value("Access-Control-Allow-Origin") == "*");
}

TEST_CASE("full level in one move") {
  RunningService svc;
  const auto created = svc.post("/games", Json{{"j", 3}, {"d", 2}, {"eta", "1/2"}, {"initial", Json::array()}});
  REQUIRE(created.status == 201);
  const std::string id = created.body["id"];
  CHECK(created.body["state"]["status"] == "awaiting-A");

  Json add = Json::array();
  for (int k = 1; k <= 8; ++k) add.push_back({{"j", 3}, {"k", k}});
  const auto moved = svc.post("/games/" + id + "/moves", Json{{"add", add}});
  REQUIRE(moved.status == 200);
  CHECK(moved.body["state"]["status"] == "B-wins");
  CHECK(moved.body["reply"]["method"] == "strategy");
  CHECK(moved.body["state"]["members"].size() == 8);

  const auto again = svc.post("/games/" + id + "/moves", add_one(DyadicInterval(3, 1)));
  CHECK(again.status == 409);
  CHECK(again.body["error"]["code"] == "game_over");

  const auto fetched = svc.get("/games/" + id);
  CHECK(fetched.status == 200);
  CHECK(fetched.body["state"] == moved.body["state"]);
}

TEST_CASE("forcing script over HTTP") {
  RunningService svc;
  const AdversaryInstance inst = adversary_instance(1, 3, 5);
  const auto created = svc.post("/games", adversary_game(inst));
  REQUIRE(created.status == 201);
  const std::string id = created.body["id"];

  const auto h = svc.get("/games/" + id + "/hint?add=5:" + std::to_string(inst.script[0].index()));
  REQUIRE(h.status == 200);
  CHECK(h.body["previsibility"]["ok"] == false);
  CHECK(h.body["brute_force"]["count"] == 1);

  Json last;
  for (const auto& i : inst.script) {
    const auto r = svc.post("/games/" + id + "/moves", add_one(i));
    REQUIRE(r.status == 200);
    last = r.body;
  }
  CHECK(last["state"]["status"] == "A-wins");
  CHECK(last["state"]["stage"] == 2);
  CHECK(last["reply"]["method"] == "none");
}

TEST_CASE("errors carry codes") {
  RunningService svc;
  CHECK(svc.get("/games/ffffffffffffffff").status == 404);
  CHECK(svc.get("/games/ffffffffffffffff").body["error"]["code"] == "not_found");
  CHECK(svc.get("/nowhere").status == 404);

  const auto bad_json = svc.post_raw("/games", "{\"j\": 3,");
  CHECK(bad_json.status == 400);
  CHECK(bad_json.body["error"]["code"] == "bad_json");

  const auto missing = svc.post("/games", Json{{"d", 2}});
  CHECK(missing.status == 400);

  Json clash = Json::array({{{"j", 3}, {"k", 1}, {"colour", 1}}, {{"j", 3}, {"k", 2}, {"colour", 1}}});
  const auto inhomogeneous = svc.post("/games", Json{{"j", 3}, {"d", 2}, {"initial", clash}});
  CHECK(inhomogeneous.status == 422);

  const auto created = svc.post("/games", Json{{"j", 3}, {"d", 2}, {"initial", Json::array()}});
  const std::string id = created.body["id"];
  const auto off_level = svc.post("/games/" + id + "/moves", add_one(DyadicInterval(2, 1)));
  CHECK(off_level.status == 422);
  CHECK(off_level.body["error"]["code"] == "invalid_move");
  CHECK(svc.get("/games/" + id).body["state"]["status"] == "awaiting-A");
  CHECK(svc.get("/games/" + id + "/hint").status == 400);
  CHECK(svc.get("/games/" + id + "/hint?add=3:x").status == 400);
}

TEST_CASE("round robin creation option") {
  RunningService svc;
  Json cells = Json::array({{{"j", 4}, {"k", 1}}, {{"j", 4}, {"k", 2}}, {{"j", 4}, {"k", 3}}});
  const auto r = svc.post("/games", Json{{"j", 4}, {"d", 2}, {"initial", cells}, {"round_robin", true}});
  REQUIRE(r.status == 201);
  const Json members = r.body["state"]["members"];
  REQUIRE(members.size() == 3);
  CHECK(members[0]["colour"] == 1);
  CHECK(members[1]["colour"] == 2);
  CHECK(members[2]["colour"] == 1);
}

TEST_CASE("undecided replies are explicit") {
  ServiceConfig cfg;
  cfg.engine.cap = 1;
  RunningService svc(cfg);
  const AdversaryInstance inst = adversary_instance(1, 2, 4);
  const std::string id = svc.post("/games", adversary_game(inst)).body["id"];
  const auto r = svc.post("/games/" + id + "/moves", add_one(inst.script[0]));
  REQUIRE(r.status == 200);
  CHECK(r.body["state"]["status"] == "undecided");
  CHECK(r.body.contains("undecided"));
}

TEST_CASE("analysis endpoints") {
  RunningService svc;
  const auto shift = svc.post("/analysis/shift", Json{{"m", Json::array({0, 0, 0, 0, 0, 0})}});
  REQUIRE(shift.status == 200);
  CHECK(shift.body["nj"] == Json::array({1, 1, 1, 1, 1, 1, 1}));
  CHECK(shift.body["semenov"]["constant"]["num"] == 1);

  const auto tree = svc.post("/analysis/tree", Json{{"m", Json::array({0, 0, 0, 1, 1, 1, 0, 0, 0, 0})}});
  REQUIRE(tree.status == 200);
  CHECK(tree.body["ok"] == true);

  const auto norm = svc.post("/analysis/norm", Json{{"depth", 6}, {"p", 3}, {"budget", 20}});
  REQUIRE(norm.status == 200);
  CHECK(norm.body["best_ratio"].get<double>() == doctest::Approx(1.0));

  CHECK(svc.post("/analysis/norm", Json{{"depth", 99}}).status == 422);
  CHECK(svc.post("/analysis/shift", Json::object()).status == 400);
}

TEST_CASE("sessions survive a restart") {
  const auto dir = std::filesystem::temp_directory_path() / ("rearr-svc-" + std::to_string(std::random_device{}()));
  ServiceConfig cfg;
  cfg.data_dir = dir;
  std::string id;
  Json state;
  {
    RunningService svc(cfg);
    id = svc.post("/games", Json{{"j", 3}, {"d", 2}, {"initial", Json::array()}}).body["id"];
    state = svc.post("/games/" + id + "/moves", add_one(DyadicInterval(3, 4))).body["state"];
  }
  {
    RunningService svc(cfg);
    const auto r = svc.get("/games/" + id);
    REQUIRE(r.status == 200);
    CHECK(r.body["state"] == state);
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("configuration from the environment") {
  setenv("PORT", "9123", 1);
  setenv("ENGINE_CAP", "77", 1);
  setenv("ENGINE_TIMEOUT_MS", "250", 1);
  const ServiceConfig cfg = service_config_from_env();
  CHECK(cfg.port == 9123);
  CHECK(cfg.engine.cap == 77);
  CHECK(cfg.engine.timeout.count() == 250);
  unsetenv("PORT");
  unsetenv("ENGINE_CAP");
  unsetenv("ENGINE_TIMEOUT_MS");
}
