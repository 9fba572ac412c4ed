#include "rearr/game.hpp"

#include <algorithm>

namespace rearr {

std::string to_string(GameStatus status) {
  switch (status) {
    case GameStatus::AwaitingA: return "awaiting-A";
    case GameStatus::AwaitingB: return "awaiting-B";
    case GameStatus::AWins: return "A-wins";
    case GameStatus::BWins: return "B-wins";
    case GameStatus::Undecided: return "undecided";
  }
  return "unknown";
}

GameStatus parse_status(const std::string& text) {
  for (GameStatus s : {GameStatus::AwaitingA, GameStatus::AwaitingB, GameStatus::AWins, GameStatus::BWins,
                       GameStatus::Undecided}) {
    if (to_string(s) == text) return s;
  }
  throw DomainError("unknown game status '" + text + "'");
}

Game Game::create(ColouredCollection initial, EngineConfig config) {
  if (!initial.fully_coloured()) {
    for (const auto& [k, colour] : initial.members()) {
      if (colour == 0) throw NotFullyColouredError(DyadicInterval(initial.level(), k));
    }
  }
  const HomogeneityVerdict verdict = check_homogeneous(initial);
  if (!verdict.ok) {
    throw DomainError("initial colouring violates " + verdict.violations.front().condition + " at " +
                      to_string(verdict.violations.front().L));
  }
  Game game;
  game.initial_ = initial;
  game.current_ = std::move(initial);
  game.config_ = config;
  game.status_ = game.current_.covers_level() ? GameStatus::BWins : GameStatus::AwaitingA;
  return game;
}

bool Game::finished() const {
  return status_ == GameStatus::AWins || status_ == GameStatus::BWins || status_ == GameStatus::Undecided;
}

void Game::apply_move_A(const IntervalCollection& added) {
  if (status_ != GameStatus::AwaitingA) throw MoveRejected("game is " + to_string(status_) + ", not awaiting A");
  if (added.empty()) throw MoveRejected("a move must add at least one interval");
  for (const DyadicInterval& i : added) {
    if (i.level() != current_.level()) {
      throw MoveRejected(to_string(i) + " is not on level " + std::to_string(current_.level()));
    }
    if (current_.contains(i)) throw MoveRejected(to_string(i) + " is already in C");
  }
  pending_.assign(added.begin(), added.end());
  status_ = GameStatus::AwaitingB;
}

void Game::finish_reply(MoveRecord& record, const std::vector<int>& colours) {
  record.colours = colours;
  for (std::size_t i = 0; i < pending_.size(); ++i) current_.insert(pending_[i], colours[i]);
  ++stage_;
  pending_.clear();
  if (current_.covers_level()) {
    status_ = GameStatus::BWins;
    record.reason = "C = D_j";
  } else {
    status_ = GameStatus::AwaitingA;
  }
  record.outcome = status_;
}

const MoveRecord& Game::engine_turn() {
  if (status_ != GameStatus::AwaitingB) throw MoveRejected("no pending move for B");
  MoveRecord record;
  record.stage = stage_;
  record.added = pending_;
  const IntervalCollection u(pending_.begin(), pending_.end());

  const ExtensionOutcome strategy = player_b_extend(current_, u);
  if (strategy.applicable) {
    record.method = "strategy";
    std::vector<int> colours;
    for (const DyadicInterval& i : pending_) colours.push_back(strategy.result.colour_of(i));
    finish_reply(record, colours);
  } else {
    BruteForceOptions options;
    options.cap = config_.cap;
    options.stop_after = 1;
    options.list_limit = 1;
    options.timeout = config_.timeout;
    const BruteForceResult search = brute_force_extensions(current_, u, options);
    record.required = search.required;
    if (search.refused) {
      record.method = "none";
      status_ = GameStatus::Undecided;
      record.reason = "U is not previsible and d^|U| = " + std::to_string(search.required) +
                      " exceeds the search cap " + std::to_string(config_.cap);
    } else if (search.count > 0) {
      record.method = "brute-force";
      finish_reply(record, search.extensions.front());
    } else if (search.timed_out) {
      record.method = "none";
      status_ = GameStatus::Undecided;
      record.reason = "search timed out after " + std::to_string(config_.timeout.count()) + " ms";
    } else {
      record.method = "none";
      status_ = GameStatus::AWins;
      record.reason = "no homogeneous colouring of U exists";
    }
    if (status_ != GameStatus::AwaitingA && status_ != GameStatus::BWins) pending_.clear();
    record.outcome = status_;
  }
  history_.push_back(std::move(record));
  return history_.back();
}

const MoveRecord& Game::play(const IntervalCollection& added) {
  apply_move_A(added);
  return engine_turn();
}

void Game::apply_logged(const MoveRecord& record) {
  if (record.stage != stage_) throw DomainError("logged round is out of order");
  apply_move_A(IntervalCollection(record.added.begin(), record.added.end()));
  if (record.colours.empty()) {
    if (record.outcome != GameStatus::AWins && record.outcome != GameStatus::Undecided) {
      throw DomainError("logged round without a reply must end the game");
    }
    status_ = record.outcome;
    pending_.clear();
  } else {
    if (record.colours.size() != pending_.size()) throw DomainError("logged reply has the wrong length");
    ColouredCollection candidate = current_;
    for (std::size_t i = 0; i < pending_.size(); ++i) candidate.insert(pending_[i], record.colours[i]);
    if (!check_homogeneous(candidate).ok) throw DomainError("logged reply is not homogeneous");
    MoveRecord copy = record;
    finish_reply(copy, record.colours);
    if (copy.outcome != record.outcome) throw DomainError("logged outcome disagrees with the rules");
  }
  history_.push_back(record);
}

Hint hint(const Game& game, const IntervalCollection& added) {
  for (const DyadicInterval& i : added) {
    if (i.level() != game.collection().level()) {
      throw MoveRejected(to_string(i) + " is not on level " + std::to_string(game.collection().level()));
    }
    if (game.collection().contains(i)) throw MoveRejected(to_string(i) + " is already in C");
  }
  Hint h;
  const ExtensionOutcome strategy = player_b_extend(game.collection(), added);
  h.previsibility = strategy.previsibility;
  if (strategy.applicable) {
    std::vector<int> colours;
    for (const DyadicInterval& i : added) colours.push_back(strategy.result.colour_of(i));
    h.strategy = std::move(colours);
  }
  BruteForceOptions options;
  options.cap = game.config().cap;
  options.count_only = true;
  options.timeout = game.config().timeout;
  h.brute_force = brute_force_extensions(game.collection(), added, options);
  return h;
}

}  // namespace rearr
