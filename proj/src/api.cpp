#include "rearr/api.hpp"

namespace rearr::api {

namespace {

template <typename T>
T get_or(const Json& j, const char* name, T fallback) {
  if (!j.is_object()) throw InputError("bad_request", "expected a JSON object");
  auto it = j.find(name);
  if (it == j.end() || it->is_null()) return fallback;
  try {
    return it->get<T>();
  } catch (const nlohmann::json::exception&) {
    throw InputError("bad_request", std::string("field '") + name + "' has the wrong type");
  }
}

const Json& required(const Json& j, const char* name) {
  if (!j.is_object()) throw InputError("bad_request", "expected a JSON object");
  auto it = j.find(name);
  if (it == j.end()) throw InputError("bad_request", std::string("missing field '") + name + "'");
  return *it;
}

int bounded(int value, int lo, int hi, const char* name) {
  if (value < lo || value > hi) {
    throw DomainError(std::string(name) + " must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  return value;
}

struct ShiftInput {
  ShiftSequence m;
  int depth;
};

ShiftInput shift_input(const Json& request, int max_depth) {
  ShiftInput in{shift_from_json(required(request, "m")), 0};
  in.depth = bounded(get_or<int>(request, "depth", in.m.depth()), 1, std::min(in.m.depth(), max_depth), "depth");
  return in;
}

double exponent(const Json& request) {
  const double p = get_or<double>(request, "p", 2.0);
  if (!(p > 1.0) || p > 64.0) throw DomainError("p must lie in (1, 64]");
  return p;
}

std::size_t count(const Json& request, const char* name, std::size_t fallback, std::size_t max) {
  const auto n = get_or<std::int64_t>(request, name, static_cast<std::int64_t>(fallback));
  if (n < 1 || static_cast<std::size_t>(n) > max) {
    throw DomainError(std::string(name) + " must lie in [1, " + std::to_string(max) + "]");
  }
  return static_cast<std::size_t>(n);
}

TreeBuild build_tree(const ShiftInput& in) {
  const DecompositionResult dec = extract_decomposition(in.m, in.depth);
  if (!dec.applicable) throw DomainError("no decomposition found: " + dec.diagnosis);
  return build_supporting_tree(in.m, dec.decomposition, in.depth);
}

ColouredCollection state_of(const Json& request) { return coloured_from_json(required(request, "state")); }

IntervalCollection u_of(const Json& request) { return collection_from_json(required(request, "u")); }

}  // namespace

// ---------------------------------------------------------------------------
// Shifts

Json shift_nj(const Json& request) {
  const ShiftInput in = shift_input(request, kMaxShiftDepth);
  return Json{{"depth", in.depth}, {"nj", all_nj(in.m, in.depth)}};
}

Json shift_semenov(const Json& request) {
  const ShiftInput in = shift_input(request, kMaxShiftDepth);
  return to_json(semenov_constant(in.m.rearrangement(), in.depth));
}

Json shift_decompose(const Json& request) {
  const ShiftInput in = shift_input(request, kMaxShiftDepth);
  const DecompositionResult dec = extract_decomposition(in.m, in.depth);
  Json out = to_json(dec);
  if (dec.applicable) {
    const DecomposabilityReport check = is_decomposable(in.m, dec.decomposition);
    Json violations = Json::array();
    for (const auto& v : check.violations) {
      violations.push_back({{"level", v.level}, {"band", v.band}, {"condition", v.condition}});
    }
    out["check"] = {{"ok", check.ok}, {"violations", violations}};
  }
  return out;
}

Json shift_select_levels(const Json& request) {
  const ShiftInput in = shift_input(request, kMaxShiftDepth);
  return to_json(select_levels(in.m, in.depth));
}

Json shift_report(const Json& request) {
  return Json{{"nj", shift_nj(request)["nj"]},
              {"semenov", shift_semenov(request)},
              {"decomposition", shift_decompose(request)},
              {"selection", shift_select_levels(request)}};
}

Json tree_report(const Json& request) {
  const ShiftInput in = shift_input(request, kMaxTreeDepth);
  return to_json(build_tree(in), get_or<bool>(request, "sets", false));
}

// ---------------------------------------------------------------------------
// Haar numerics

Json norm_report(const Json& request) {
  const int depth = bounded(get_or<int>(request, "depth", 8), 1, kMaxHaarDepth, "depth");
  const Rearrangement tau = rearrangement_from_json(request.value("tau", Json("identity")), depth);
  const NormReport r = estimate_norm(tau, exponent(request), depth, count(request, "budget", 200, kMaxBudget),
                                     get_or<std::uint64_t>(request, "seed", 0));
  return to_json(r);
}

Json figiel_trend(const Json& request) {
  const int depth = bounded(get_or<int>(request, "depth", 10), 1, kMaxHaarDepth, "depth");
  const double p = exponent(request);
  const std::size_t budget = count(request, "budget", 200, kMaxBudget);
  const auto seed = get_or<std::uint64_t>(request, "seed", 0);
  const auto ms = get_or<std::vector<std::int64_t>>(request, "ms", {1, 2, 4, 8, 16});
  Json rows = Json::array();
  for (std::int64_t m : ms) {
    const NormReport r = estimate_norm(Rearrangement::figiel(m, depth), p, depth, budget, seed);
    rows.push_back({{"m", m}, {"best_ratio", r.best_ratio}, {"evaluations", r.evaluations}});
  }
  return Json{{"p", p}, {"depth", depth}, {"budget", budget}, {"seed", seed}, {"rows", rows}};
}

Json blocked_report(const Json& request) {
  BlockFamily blocks;
  int depth = 0;
  for (const Json& b : required(request, "blocks")) {
    const DyadicInterval i = interval_from_json(required(b, "I"));
    IntervalCollection members = collection_from_json(required(b, "members"));
    depth = std::max({depth, i.level(), members.empty() ? 0 : members.max_level()});
    if (!blocks.emplace(i, std::move(members)).second) throw InputError("bad_request", "duplicate block index");
  }
  bounded(depth + 1, 1, kMaxHaarDepth, "block depth");
  const Rearrangement tau = rearrangement_from_json(request.value("tau", Json("identity")), depth + 1);
  return to_json(blocked_equivalence_report(blocks, tau, exponent(request),
                                            count(request, "trials", 100, kMaxTrials),
                                            get_or<std::uint64_t>(request, "seed", 0)));
}

Json restricted_report(const Json& request) {
  const ShiftInput in = shift_input(request, kMaxHaarDepth - 3);
  const TreeBuild tree = build_tree(in);
  if (tree.refused) throw DomainError("tree construction refused: " + tree.refusal);
  const auto index = static_cast<std::size_t>(get_or<int>(request, "piece", 0));
  if (index >= tree.pieces.size()) throw DomainError("piece index out of range");
  const TreePiece& piece = tree.pieces[index];
  Json out = to_json(restricted_isomorphism_report(tree.sigma, piece.family, piece.sets, exponent(request),
                                                   count(request, "trials", 100, kMaxTrials),
                                                   get_or<std::uint64_t>(request, "seed", 0)));
  out["piece"] = {{"r", piece.r}, {"l", piece.l}, {"size", piece.family.size()}};
  return out;
}

// ---------------------------------------------------------------------------
// Colour game

Json game_check(const Json& request) {
  const ColouredCollection c = state_of(request);
  const bool reduced = get_or<bool>(request, "reduced", false);
  return to_json(reduced ? check_homogeneous_reduced(c) : check_homogeneous(c));
}

Json game_previsible(const Json& request) {
  const ColouredCollection c = state_of(request);
  const bool literal = get_or<bool>(request, "literal", false);
  return to_json(check_previsible(u_of(request), c.collection(), c.level(), c.colours(), !literal));
}

Json game_extend(const Json& request) { return to_json(player_b_extend(state_of(request), u_of(request))); }

Json game_oracle(const Json& request) {
  BruteForceOptions options;
  options.cap = get_or<std::uint64_t>(request, "cap", options.cap);
  options.list_limit = get_or<std::size_t>(request, "limit", options.list_limit);
  return to_json(brute_force_extensions(state_of(request), u_of(request), options));
}

Json game_adversary(const Json& request) {
  const int a = get_or<int>(request, "a", 1);
  const int n = get_or<int>(request, "n", 2);
  const int j = get_or<int>(request, "j", n + a + 1);
  const AdversaryInstance inst = adversary_instance(a, n, j);
  Json out = to_json(inst);
  if (!get_or<bool>(request, "verify", false)) return out;

  // Replays the script, recording how many colourings each stage admits.
  ColouredCollection c = inst.initial;
  Json stages = Json::array();
  bool pattern = true;
  for (int k = 0; k < n; ++k) {
    const IntervalCollection u{inst.script[static_cast<std::size_t>(k)]};
    const BruteForceResult bf = brute_force_extensions(c, u);
    const PrevisibilityVerdict prev = check_previsible(u, c.collection(), j, c.colours());
    Json stage{{"stage", k}, {"U", to_json(u)}, {"count", bf.count}, {"previsible", prev.ok}};
    const bool expected_unique = k <= n - 2;
    if (expected_unique) {
      const bool unique = bf.count == 1 && bf.extensions.front().front() == 1;
      pattern = pattern && unique;
      if (bf.count > 0) {
        stage["colour"] = bf.extensions.front().front();
        c.insert(inst.script[static_cast<std::size_t>(k)], bf.extensions.front().front());
      }
    } else {
      pattern = pattern && bf.count == 0;
    }
    stages.push_back(stage);
  }
  // The position A reaches when B is forced to give J_1 colour 1 as well.
  ColouredCollection terminal = c;
  terminal.insert(inst.script.back(), 1);
  terminal.set_eta(Rational(1, n + 1));
  const HomogeneityVerdict loose = check_homogeneous(terminal);
  terminal.set_eta(Rational(1, n));
  const HomogeneityVerdict strict = check_homogeneous(terminal);
  const bool only_top = strict.violations.size() == 1 && strict.violations.front().L == inst.chain.back();
  out["stages"] = stages;
  out["terminal"] = {{"state", to_json(terminal)},
                     {"eta_n_plus_1", to_json(loose)},
                     {"eta_n", to_json(strict)}};
  out["verified"] = pattern && loose.ok && !strict.ok && only_top;
  return out;
}

}  // namespace rearr::api
