// Request/response operations used by the CLI, the HTTP service and the
// Python module alike. Every function takes and returns JSON and throws
// InputError or DomainError on bad input.

#pragma once

#include "rearr/json_io.hpp"

namespace rearr::api {

inline constexpr int kMaxShiftDepth = 20;
inline constexpr int kMaxTreeDepth = 16;
inline constexpr int kMaxHaarDepth = 14;
inline constexpr std::size_t kMaxBudget = 20000;
inline constexpr std::size_t kMaxTrials = 20000;

/// {"m": [...], "depth"?} -> N_j, Semenov constant, decomposition, level selection.
Json shift_report(const Json& request);
Json shift_nj(const Json& request);
Json shift_semenov(const Json& request);
Json shift_decompose(const Json& request);
Json shift_select_levels(const Json& request);
/// {"m": [...], "depth"?, "sets"?: bool} -> supporting tree build.
Json tree_report(const Json& request);

/// {"tau", "p", "depth", "budget"?, "seed"?} -> norm lower bound.
Json norm_report(const Json& request);
/// {"ms": [...], "p", "depth", "budget"?, "seed"?} -> one row per m.
Json figiel_trend(const Json& request);
/// {"blocks": [{"I", "members"}], "tau", "p", "trials"?, "seed"?}.
Json blocked_report(const Json& request);
/// {"m", "depth", "p", "trials"?, "seed"?, "piece"?} on a built supporting tree.
Json restricted_report(const Json& request);

/// {"state", "reduced"?} -> homogeneity verdict.
Json game_check(const Json& request);
/// {"state", "u", "literal"?} -> previsibility verdict.
Json game_previsible(const Json& request);
/// {"state", "u"} -> Player B's extension.
Json game_extend(const Json& request);
/// {"state", "u", "cap"?, "limit"?} -> every valid extension.
Json game_oracle(const Json& request);
/// {"a", "n", "j", "verify"?} -> adversary instance with the stage-by-stage
/// extension counts and the terminal check at η = 1/n and 1/(n+1).
Json game_adversary(const Json& request);

}  // namespace rearr::api
