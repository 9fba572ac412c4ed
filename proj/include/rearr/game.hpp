// The game state machine: Player A enlarges the collection, the engine
// answers as Player B with the constructive strategy when U is previsible and
// with the exhaustive search otherwise.

#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rearr/colour_game.hpp"

namespace rearr {

enum class GameStatus { AwaitingA, AwaitingB, AWins, BWins, Undecided };

std::string to_string(GameStatus status);
GameStatus parse_status(const std::string& text);

class MoveRejected : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct EngineConfig {
  std::uint64_t cap = std::uint64_t{1} << 20;
  std::chrono::milliseconds timeout{10000};
};

/// One round: A's added intervals and the engine's answer.
struct MoveRecord {
  int stage = 0;
  std::vector<DyadicInterval> added;
  /// "strategy", "brute-force" or "none" when no colouring was produced.
  std::string method;
  std::vector<int> colours;  // colours of `added`, in order; empty without a reply
  GameStatus outcome = GameStatus::AwaitingA;
  std::string reason;        // why the game ended, when it did
  std::uint64_t required = 0;  // d^|U| for the brute-force fallback
};

struct Hint {
  PrevisibilityVerdict previsibility;
  std::optional<std::vector<int>> strategy;  // present when previsible
  BruteForceResult brute_force;              // count only, capped
};

class Game {
 public:
  /// C(0) must be fully coloured and homogeneous.
  static Game create(ColouredCollection initial, EngineConfig config = {});

  const ColouredCollection& initial() const { return initial_; }
  const ColouredCollection& collection() const { return current_; }
  GameStatus status() const { return status_; }
  /// Number of completed rounds (successful B replies).
  int stage() const { return stage_; }
  const std::vector<DyadicInterval>& pending() const { return pending_; }
  const std::vector<MoveRecord>& history() const { return history_; }
  const EngineConfig& config() const { return config_; }
  bool finished() const;

  /// Records A's move. Rejects empty moves, repeats, members of C and
  /// intervals off level j; the state is unchanged on rejection.
  void apply_move_A(const IntervalCollection& added);
  /// Computes B's reply to the pending move.
  const MoveRecord& engine_turn();
  const MoveRecord& play(const IntervalCollection& added);

  /// Re-applies a logged round without recomputing B's reply; the colours
  /// are validated against the rules.
  void apply_logged(const MoveRecord& record);

 private:
  void finish_reply(MoveRecord& record, const std::vector<int>& colours);

  ColouredCollection initial_;
  ColouredCollection current_;
  EngineConfig config_;
  GameStatus status_ = GameStatus::AwaitingA;
  int stage_ = 0;
  std::vector<DyadicInterval> pending_;
  std::vector<MoveRecord> history_;
};

/// What the engine would do for `added` without changing the game.
Hint hint(const Game& game, const IntervalCollection& added);

}  // namespace rearr
