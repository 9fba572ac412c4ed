// JSON encodings shared by the CLI, the HTTP service and the Python module.
//
// Intervals are {"j": level, "k": index}; rationals are {"num", "den"} on
// output and may also be given as "p/q" strings or integers on input.

#pragma once

#include <string>

#include <json.hpp>

#include "rearr/colour_game.hpp"
#include "rearr/dyadic.hpp"
#include "rearr/game.hpp"
#include "rearr/haar.hpp"
#include "rearr/shift.hpp"
#include "rearr/tree_builder.hpp"

namespace rearr {

using Json = nlohmann::ordered_json;

/// Malformed request or input document. Carries a machine-readable code.
class InputError : public std::invalid_argument {
 public:
  InputError(std::string code, const std::string& message)
      : std::invalid_argument(message), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

/// Parses text, reporting syntax errors with line, column and the offending line.
Json parse_json_text(const std::string& text, const std::string& source = "input");
Json read_json_file(const std::string& path);

Json to_json(const Rational& r);
Rational rational_from_json(const Json& j);

Json to_json(const DyadicInterval& i);
DyadicInterval interval_from_json(const Json& j);
Json to_json(const IntervalCollection& c);
IntervalCollection collection_from_json(const Json& j);
/// Pieces as [{"lo": "p/q", "hi": "p/q"}, ...].
Json to_json(const IntervalSet& s);

ShiftSequence shift_from_json(const Json& j);
/// "identity", {"kind": "identity"|"figiel"|"shift"|"tables", ...}.
Rearrangement rearrangement_from_json(const Json& j, int depth);

Json to_json(const ColouredCollection& c);
/// {"j", "d", "eta", "members": [{"j", "k", "colour"}]}; "colour" may be omitted.
ColouredCollection coloured_from_json(const Json& j);

Json to_json(const HomogeneityVerdict& v);
Json to_json(const PrevisibilityVerdict& v);
Json to_json(const ExtensionOutcome& e);
Json to_json(const BruteForceResult& r);
Json to_json(const AdversaryInstance& a);

/// ρ and colour counts for every testing interval holding a member.
Json testing_tree_json(const ColouredCollection& c);
Json to_json(const MoveRecord& m);
MoveRecord move_from_json(const Json& j);
Json to_json(const Game& g);
Json to_json(const Hint& h);

Json to_json(const SemenovReport& r);
Json to_json(const DecompositionResult& r);
Json to_json(const LevelSelection& s);
Json to_json(const SupportCertificate& c, bool records = false);
/// With `sets`, every piece lists its map I -> A(I).
Json to_json(const TreeBuild& t, bool sets = false);
Json to_json(const NormReport& r);
Json to_json(const RatioSummary& r);
Json to_json(const BlockedReport& r);
Json to_json(const RestrictedReport& r);

}  // namespace rearr
