// Game sessions persisted as append-only JSON-lines event logs.
//
// The first line of a log creates the session; each further line records one
// round. Loading a log re-applies the recorded replies, and verify_replay
// recomputes them with the engine.

#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "rearr/game.hpp"
#include "rearr/json_io.hpp"

namespace rearr {

class SessionNotFound : public std::out_of_range {
 public:
  explicit SessionNotFound(const std::string& id) : std::out_of_range("no game with id '" + id + "'") {}
};

struct SessionRecord {
  std::string id;
  std::string created;
  std::string updated;
  Game game;
  std::vector<Json> events;  // the log, one JSON object per line
};

Json session_json(const SessionRecord& s);

/// Rebuilds a session from its log lines.
SessionRecord replay_events(const std::vector<Json>& events, const EngineConfig& config);
std::vector<Json> read_event_log(const std::filesystem::path& path);

struct ReplayCheck {
  bool identical = false;
  std::string detail;
};

/// Recomputes every logged reply and compares the resulting state with the
/// state obtained from the logged replies.
ReplayCheck verify_replay(const std::vector<Json>& events, const EngineConfig& config);

class SessionStore {
 public:
  /// Without a directory the sessions live in memory only.
  SessionStore(std::optional<std::filesystem::path> directory, EngineConfig config);

  std::string create(const ColouredCollection& initial);
  /// Runs `fn` with the session locked. Loads a logged session on first use.
  Json with_session(const std::string& id, const std::function<Json(SessionRecord&)>& fn);
  /// Logs the round the engine just completed.
  void record_move(SessionRecord& session, const MoveRecord& move);

  const EngineConfig& config() const { return config_; }

 private:
  struct Slot {
    std::mutex lock;
    SessionRecord record;
  };

  std::shared_ptr<Slot> find(const std::string& id);
  std::string fresh_id();
  void append(SessionRecord& session, Json event);

  std::optional<std::filesystem::path> directory_;
  EngineConfig config_;
  std::mutex table_lock_;
  std::map<std::string, std::shared_ptr<Slot>> sessions_;
};

std::string utc_timestamp();

}  // namespace rearr
