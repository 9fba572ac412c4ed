#include "rearr/session.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <random>
#include <regex>

namespace rearr {

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buffer[32];
  std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buffer;
}

Json session_json(const SessionRecord& s) {
  return Json{{"id", s.id}, {"created", s.created}, {"updated", s.updated}, {"state", to_json(s.game)}};
}

namespace {

Json create_event(const SessionRecord& s) {
  return Json{{"event", "create"}, {"id", s.id}, {"time", s.created}, {"initial", to_json(s.game.initial())}};
}

Json move_event(const MoveRecord& m) {
  return Json{{"event", "move"}, {"time", utc_timestamp()}, {"record", to_json(m)}};
}

SessionRecord start(const std::vector<Json>& events, const EngineConfig& config) {
  if (events.empty() || events.front().value("event", "") != "create") {
    throw DomainError("event log must start with a create event");
  }
  const Json& first = events.front();
  SessionRecord s;
  s.id = first.at("id").get<std::string>();
  s.created = first.at("time").get<std::string>();
  s.updated = s.created;
  s.game = Game::create(coloured_from_json(first.at("initial")), config);
  s.events.push_back(first);
  return s;
}

}  // namespace

SessionRecord replay_events(const std::vector<Json>& events, const EngineConfig& config) {
  SessionRecord s = start(events, config);
  for (std::size_t i = 1; i < events.size(); ++i) {
    const Json& e = events[i];
    if (e.value("event", "") != "move") throw DomainError("unknown event at line " + std::to_string(i + 1));
    s.game.apply_logged(move_from_json(e.at("record")));
    s.updated = e.at("time").get<std::string>();
    s.events.push_back(e);
  }
  return s;
}

std::vector<Json> read_event_log(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open " + path.string());
  std::vector<Json> events;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    events.push_back(parse_json_text(line, path.string() + ":" + std::to_string(number)));
  }
  return events;
}

ReplayCheck verify_replay(const std::vector<Json>& events, const EngineConfig& config) {
  ReplayCheck check;
  const SessionRecord logged = replay_events(events, config);
  SessionRecord fresh = start(events, config);
  for (std::size_t i = 1; i < events.size(); ++i) {
    const MoveRecord record = move_from_json(events[i].at("record"));
    fresh.game.play(IntervalCollection(record.added.begin(), record.added.end()));
  }
  const std::string a = to_json(logged.game).dump();
  const std::string b = to_json(fresh.game).dump();
  check.identical = a == b;
  if (!check.identical) {
    std::size_t at = 0;
    while (at < a.size() && at < b.size() && a[at] == b[at]) ++at;
    check.detail = "states differ from byte " + std::to_string(at);
  }
  return check;
}

// ---------------------------------------------------------------------------

SessionStore::SessionStore(std::optional<std::filesystem::path> directory, EngineConfig config)
    : directory_(std::move(directory)), config_(config) {
  if (directory_) std::filesystem::create_directories(*directory_);
}

std::string SessionStore::fresh_id() {
  static std::mt19937_64 rng(std::random_device{}());
  char buffer[17];
  std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(rng()));
  return buffer;
}

std::string SessionStore::create(const ColouredCollection& initial) {
  auto slot = std::make_shared<Slot>();
  slot->record.game = Game::create(initial, config_);
  slot->record.created = utc_timestamp();
  slot->record.updated = slot->record.created;
  std::lock_guard<std::mutex> guard(table_lock_);
  std::string id;
  do {
    id = fresh_id();
  } while (sessions_.count(id) != 0 || (directory_ && std::filesystem::exists(*directory_ / (id + ".jsonl"))));
  slot->record.id = id;
  const Json event = create_event(slot->record);
  slot->record.events.push_back(event);
  if (directory_) {
    std::ofstream out(*directory_ / (id + ".jsonl"));
    out << event.dump() << '\n';
  }
  sessions_.emplace(id, slot);
  return id;
}

std::shared_ptr<SessionStore::Slot> SessionStore::find(const std::string& id) {
  static const std::regex valid("[0-9a-f]{16}");
  std::lock_guard<std::mutex> guard(table_lock_);
  auto it = sessions_.find(id);
  if (it != sessions_.end()) return it->second;
  if (!std::regex_match(id, valid) || !directory_) throw SessionNotFound(id);
  const auto path = *directory_ / (id + ".jsonl");
  if (!std::filesystem::exists(path)) throw SessionNotFound(id);
  auto slot = std::make_shared<Slot>();
  slot->record = replay_events(read_event_log(path), config_);
  sessions_.emplace(id, slot);
  return slot;
}

Json SessionStore::with_session(const std::string& id, const std::function<Json(SessionRecord&)>& fn) {
  auto slot = find(id);
  std::lock_guard<std::mutex> guard(slot->lock);
  return fn(slot->record);
}

void SessionStore::record_move(SessionRecord& session, const MoveRecord& move) {
  append(session, move_event(move));
}

void SessionStore::append(SessionRecord& session, Json event) {
  if (event.value("event", "") == "move") session.updated = event.at("time").get<std::string>();
  if (directory_) {
    std::ofstream out(*directory_ / (session.id + ".jsonl"), std::ios::app);
    out << event.dump() << '\n';
  }
  session.events.push_back(std::move(event));
}

}  // namespace rearr
