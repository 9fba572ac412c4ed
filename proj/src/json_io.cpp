#include "rearr/json_io.hpp"

#include <fstream>
#include <sstream>

namespace rearr {

namespace {

std::string line_context(const std::string& text, std::size_t offset) {
  offset = std::min(offset, text.size());
  std::size_t line = 1;
  std::size_t line_start = 0;
  for (std::size_t i = 0; i < offset; ++i) {
    if (text[i] == '\n') {
      ++line;
      line_start = i + 1;
    }
  }
  std::size_t line_end = text.find('\n', line_start);
  if (line_end == std::string::npos) line_end = text.size();
  const std::size_t column = offset - line_start + 1;
  std::ostringstream out;
  out << "line " << line << ", column " << column << ":\n  " << text.substr(line_start, line_end - line_start)
      << "\n  " << std::string(column > 0 ? column - 1 : 0, ' ') << "^";
  return out.str();
}

const Json& field(const Json& j, const char* name) {
  if (!j.is_object()) throw InputError("bad_request", "expected a JSON object");
  auto it = j.find(name);
  if (it == j.end()) throw InputError("bad_request", std::string("missing field '") + name + "'");
  return *it;
}

std::int64_t integer(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw InputError("bad_request", std::string(what) + " must be an integer");
  return j.get<std::int64_t>();
}

}  // namespace

Json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const std::size_t offset = e.byte > 0 ? e.byte - 1 : 0;
    throw InputError("bad_json", source + ": malformed JSON at " + line_context(text, offset));
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("bad_input", "cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_json_text(buffer.str(), path);
}

// ---------------------------------------------------------------------------
// Basic values

Json to_json(const Rational& r) { return Json{{"num", r.numerator()}, {"den", r.denominator()}}; }

Rational rational_from_json(const Json& j) {
  try {
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    if (j.is_string()) {
      const auto text = j.get<std::string>();
      const auto slash = text.find('/');
      if (slash == std::string::npos) return Rational(std::stoll(text));
      return Rational(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
    }
    if (j.is_object()) return Rational(integer(field(j, "num"), "num"), integer(field(j, "den"), "den"));
  } catch (const std::invalid_argument&) {
  } catch (const std::out_of_range&) {
  } catch (const boost::bad_rational&) {
  }
  throw InputError("bad_request", "not a rational: " + j.dump());
}

Json to_json(const DyadicInterval& i) { return Json{{"j", i.level()}, {"k", i.index()}}; }

DyadicInterval interval_from_json(const Json& j) {
  const auto level = integer(field(j, "j"), "j");
  const auto index = integer(field(j, "k"), "k");
  if (level < 0 || level > kMaxLevel) throw DomainError("level " + std::to_string(level) + " out of range");
  return DyadicInterval(static_cast<int>(level), index);
}

Json to_json(const IntervalCollection& c) {
  Json out = Json::array();
  for (const DyadicInterval& i : c) out.push_back(to_json(i));
  return out;
}

IntervalCollection collection_from_json(const Json& j) {
  if (!j.is_array()) throw InputError("bad_request", "expected an array of intervals");
  IntervalCollection out;
  for (const Json& e : j) {
    const DyadicInterval i = interval_from_json(e);
    if (out.contains(i)) throw InputError("bad_request", "duplicate interval " + to_string(i));
    out.insert(i);
  }
  return out;
}

Json to_json(const IntervalSet& s) {
  Json out = Json::array();
  for (const auto& p : s.pieces()) {
    out.push_back({{"lo", to_string(Rational(p.lo, kUnit))}, {"hi", to_string(Rational(p.hi, kUnit))}});
  }
  return out;
}

ShiftSequence shift_from_json(const Json& j) {
  const Json& values = j.is_object() ? field(j, "m") : j;
  if (!values.is_array()) throw InputError("bad_request", "a shift sequence is an array of integers");
  std::vector<std::int64_t> m;
  for (const Json& e : values) m.push_back(integer(e, "m_j"));
  if (m.empty()) throw InputError("bad_request", "the shift sequence is empty");
  if (m.size() > static_cast<std::size_t>(kMaxLevel)) throw DomainError("shift sequence longer than 30 levels");
  return ShiftSequence(std::move(m));
}

Rearrangement rearrangement_from_json(const Json& j, int depth) {
  std::string kind;
  if (j.is_string()) {
    kind = j.get<std::string>();
  } else {
    kind = field(j, "kind").get<std::string>();
  }
  if (kind == "identity") return Rearrangement::identity(depth);
  if (kind == "figiel") return Rearrangement::figiel(integer(field(j, "m"), "m"), depth);
  if (kind == "shift") {
    const ShiftSequence m = shift_from_json(field(j, "m"));
    if (m.depth() < depth) throw DomainError("shift sequence shorter than the requested depth");
    std::vector<std::int64_t> offsets(static_cast<std::size_t>(depth) + 1, 0);
    for (int l = 1; l <= depth; ++l) offsets[static_cast<std::size_t>(l)] = m.reduced(l);
    return Rearrangement::shifts(offsets);
  }
  if (kind == "tables") {
    std::vector<std::vector<std::int64_t>> tables;
    for (const Json& level : field(j, "tables")) tables.push_back(level.get<std::vector<std::int64_t>>());
    return Rearrangement::from_tables(std::move(tables));
  }
  throw InputError("bad_request", "unknown rearrangement kind '" + kind + "'");
}

// ---------------------------------------------------------------------------
// Colour game

Json to_json(const ColouredCollection& c) {
  Json members = Json::array();
  for (const auto& [k, colour] : c.members()) members.push_back({{"j", c.level()}, {"k", k}, {"colour", colour}});
  return Json{{"j", c.level()}, {"d", c.colours()}, {"eta", to_json(c.eta())}, {"members", members}};
}

ColouredCollection coloured_from_json(const Json& j) {
  const auto level = integer(field(j, "j"), "j");
  const auto d = integer(field(j, "d"), "d");
  if (level < 0 || level > kMaxGameLevel) throw DomainError("level must lie in [0, 24]");
  if (d < 1 || d > 64) throw DomainError("d must lie in [1, 64]");
  const Rational eta = j.contains("eta") ? rational_from_json(j.at("eta")) : Rational(1, 2);
  ColouredCollection c(static_cast<int>(level), static_cast<int>(d), eta);
  if (j.contains("members")) {
    for (const Json& m : j.at("members")) {
      const int colour = m.contains("colour") ? static_cast<int>(integer(m.at("colour"), "colour")) : 0;
      c.insert(interval_from_json(m), colour);
    }
  }
  return c;
}

Json to_json(const HomogeneityVerdict& v) {
  Json violations = Json::array();
  for (const auto& x : v.violations) {
    violations.push_back({{"L", to_json(x.L)}, {"condition", x.condition}, {"rho", x.rho}, {"counts", x.counts}});
  }
  return Json{{"ok", v.ok}, {"violations", violations}};
}

Json to_json(const PrevisibilityVerdict& v) {
  Json violations = Json::array();
  for (const auto& x : v.violations) {
    violations.push_back({{"parent", to_json(x.parent)}, {"small", to_json(x.small)}, {"big", to_json(x.big)}});
  }
  return Json{{"ok", v.ok}, {"violations", violations}};
}

Json to_json(const ExtensionOutcome& e) {
  Json out{{"applicable", e.applicable}, {"previsibility", to_json(e.previsibility)}};
  if (e.applicable) out["result"] = to_json(e.result);
  out["trace"] = e.trace;
  return out;
}

Json to_json(const BruteForceResult& r) {
  Json order = Json::array();
  for (const auto& i : r.order) order.push_back(to_json(i));
  return Json{{"refused", r.refused},  {"required", r.required},     {"timed_out", r.timed_out},
              {"stopped", r.stopped},  {"count", r.count},           {"order", order},
              {"extensions", r.extensions}};
}

Json to_json(const AdversaryInstance& a) {
  auto list = [](const std::vector<DyadicInterval>& v) {
    Json out = Json::array();
    for (const auto& i : v) out.push_back(to_json(i));
    return out;
  };
  return Json{{"a", a.a},
              {"n", a.n},
              {"j", a.level},
              {"d", 1 << a.a},
              {"eta", to_json(Rational(1, a.n))},
              {"initial", to_json(a.initial)},
              {"chain", list(a.chain)},
              {"brothers", list(a.brothers)},
              {"I", list(a.i_intervals)},
              {"J", list(a.j_intervals)},
              {"script", list(a.script)}};
}

Json testing_tree_json(const ColouredCollection& c) {
  Json out = Json::array();
  std::set<DyadicInterval> nodes;
  for (const auto& [k, colour] : c.members()) {
    const DyadicInterval i(c.level(), k);
    for (int l = 0; l <= c.level(); ++l) nodes.insert(i.ancestor(l));
  }
  for (const DyadicInterval& L : nodes) {
    const auto counts = c.colour_counts(L);
    const std::int64_t rho = c.rho(L);
    const auto [lo, hi] = std::minmax_element(counts.begin(), counts.end());
    out.push_back({{"L", to_json(L)},
                   {"rho", rho},
                   {"counts", counts},
                   {"min", *lo},
                   {"max", *hi},
                   {"eta_max", to_json(c.eta() * Rational(*hi))}});
  }
  return out;
}

Json to_json(const MoveRecord& m) {
  Json added = Json::array();
  for (const auto& i : m.added) added.push_back(to_json(i));
  return Json{{"stage", m.stage},   {"added", added},
              {"method", m.method}, {"colours", m.colours},
              {"outcome", to_string(m.outcome)}, {"reason", m.reason},
              {"required", m.required}};
}

MoveRecord move_from_json(const Json& j) {
  MoveRecord m;
  m.stage = static_cast<int>(integer(field(j, "stage"), "stage"));
  for (const Json& i : field(j, "added")) m.added.push_back(interval_from_json(i));
  m.method = field(j, "method").get<std::string>();
  m.colours = field(j, "colours").get<std::vector<int>>();
  m.outcome = parse_status(field(j, "outcome").get<std::string>());
  m.reason = j.value("reason", "");
  m.required = j.value("required", std::uint64_t{0});
  return m;
}

Json to_json(const Game& g) {
  Json pending = Json::array();
  for (const auto& i : g.pending()) pending.push_back(to_json(i));
  Json history = Json::array();
  for (const auto& m : g.history()) history.push_back(to_json(m));
  const ColouredCollection& c = g.collection();
  Json out = to_json(c);
  out["stage"] = g.stage();
  out["status"] = to_string(g.status());
  out["pending"] = pending;
  out["history"] = history;
  out["tree"] = testing_tree_json(c);
  return out;
}

Json to_json(const Hint& h) {
  Json out{{"previsibility", to_json(h.previsibility)}};
  out["strategy"] = h.strategy ? Json(*h.strategy) : Json(nullptr);
  out["brute_force"] = to_json(h.brute_force);
  return out;
}

// ---------------------------------------------------------------------------
// Shift analysis and trees

Json to_json(const SemenovReport& r) {
  return Json{{"constant", to_json(r.constant)}, {"witness", to_json(r.witness)}, {"depth", r.depth}};
}

Json to_json(const DecompositionResult& r) {
  Json out{{"applicable", r.applicable}, {"nj", r.nj}, {"diagnosis", r.diagnosis}};
  out["offending_level"] = r.offending_level ? Json(*r.offending_level) : Json(nullptr);
  if (r.applicable) {
    Json a = Json::array();
    for (const auto& x : r.decomposition.a) a.push_back(to_json(x));
    out["decomposition"] = {{"a", a},
                            {"jk", r.decomposition.jk},
                            {"w1", to_json(r.decomposition.w1)},
                            {"w2", to_json(r.decomposition.w2)},
                            {"depth", r.decomposition.depth}};
  }
  return out;
}

Json to_json(const LevelSelection& s) {
  return Json{{"ok", s.ok},
              {"levels", s.levels},
              {"induced", s.induced.values()},
              {"nj", s.nj},
              {"off_selection_doubles", s.off_selection_doubles},
              {"diagnosis", s.diagnosis}};
}

Json to_json(const SupportCertificate& c, bool records) {
  Json violations = Json::array();
  for (const auto& v : c.violations) violations.push_back({to_json(v.first), to_json(v.second)});
  Json out{{"verdict", c.verdict}, {"C", to_json(c.c)}, {"delta", to_json(c.delta)}, {"nested", c.nested},
           {"violations", violations}};
  if (records) {
    Json list = Json::array();
    for (const auto& r : c.records) {
      list.push_back({{"I", to_json(r.interval)},
                      {"set_ratio", to_json(r.set_ratio)},
                      {"own_ratio", to_json(r.own_ratio)},
                      {"image_ratio", to_json(r.image_ratio)}});
    }
    out["records"] = list;
  }
  return out;
}

Json to_json(const TreeBuild& t, bool sets) {
  Json out{{"refused", t.refused}, {"refusal", t.refusal}, {"depth", t.depth}, {"degenerate", t.degenerate},
           {"ok", t.ok}};
  Json splits = Json::array();
  for (const auto& s : t.splits) {
    splits.push_back({{"level", s.level}, {"shift", s.shift}, {"classes", s.classes},
                      {"self_conflict", s.self_conflict}});
  }
  out["splits"] = splits;
  Json adjustments = Json::array();
  for (const auto& a : t.adjustments) {
    adjustments.push_back({{"level", a.level}, {"band", a.band}, {"delta_star", a.delta_star},
                           {"overlap", to_json(a.overlap)}, {"composed_offset", a.composed_offset}});
  }
  out["adjustments"] = adjustments;
  Json pieces = Json::array();
  for (const auto& p : t.pieces) {
    Json stages = Json::array();
    for (const auto& s : p.stages) {
      stages.push_back({{"stage", s.stage},
                        {"band", s.band},
                        {"entering", s.entering},
                        {"threshold", to_json(s.threshold)},
                        {"containment_violations", s.containment_violations},
                        {"halo_violations", s.halo_violations},
                        {"dichotomy_violations", s.dichotomy_violations},
                        {"overlap_violations", s.overlap_violations},
                        {"diameter_violations", s.diameter_violations},
                        {"witnesses", s.witnesses}});
    }
    Json piece{{"r", p.r},
               {"l", p.l},
               {"size", p.family.size()},
               {"ok", p.ok},
               {"min_set_ratio", to_json(p.min_set_ratio)},
               {"certificate", to_json(p.certificate)},
               {"stages", stages}};
    if (sets) {
      Json map = Json::array();
      for (const auto& [i, a] : p.sets) map.push_back({{"I", to_json(i)}, {"A", to_json(a)}});
      piece["sets"] = map;
    }
    pieces.push_back(piece);
  }
  out["pieces"] = pieces;
  out["unprocessed_levels"] = t.unprocessed_levels;
  out["notices"] = t.notices;
  return out;
}

// ---------------------------------------------------------------------------
// Haar numerics

Json to_json(const NormReport& r) {
  return Json{{"p", r.p},
              {"depth", r.depth},
              {"seed", r.seed},
              {"budget", r.budget},
              {"evaluations", r.evaluations},
              {"best_ratio", r.best_ratio},
              {"history", r.history}};
}

Json to_json(const RatioSummary& r) { return Json{{"min", r.min}, {"max", r.max}, {"trials", r.trials}}; }

Json to_json(const BlockedReport& r) {
  return Json{{"accepted", r.accepted},
              {"rejection", r.rejection},
              {"p", r.p},
              {"seed", r.seed},
              {"image_vs_blocked", to_json(r.image_vs_blocked)},
              {"blocked_vs_haar", to_json(r.blocked_vs_haar)}};
}

Json to_json(const RestrictedReport& r) {
  return Json{{"accepted", r.accepted},
              {"certificate", to_json(r.certificate)},
              {"p", r.p},
              {"seed", r.seed},
              {"ratio", to_json(r.ratio)}};
}

}  // namespace rearr
