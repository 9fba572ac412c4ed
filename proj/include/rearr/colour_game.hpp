// Coloured collections of level-j dyadic intervals, (η,d)-homogeneity,
// previsibility, Player B's constructive extension, an exhaustive oracle
// and the forcing configuration in which Player A wins.

#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rearr/dyadic.hpp"

namespace rearr {

class NotFullyColouredError : public std::invalid_argument {
 public:
  explicit NotFullyColouredError(const DyadicInterval& interval);
  const DyadicInterval& interval() const { return interval_; }

 private:
  DyadicInterval interval_;
};

/// Raised when Player B's strategy produces an invalid colouring. The
/// strategy is proved correct, so this signals an implementation defect.
class DefectError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline constexpr int kMaxGameLevel = 24;

/// Members of D_j with colours in {1..d}; colour 0 marks an uncoloured member.
class ColouredCollection {
 public:
  ColouredCollection() = default;
  ColouredCollection(int level, int colours, Rational eta);

  int level() const { return level_; }
  int colours() const { return colours_; }
  const Rational& eta() const { return eta_; }
  void set_eta(Rational eta);

  void insert(const DyadicInterval& interval, int colour = 0);
  void set_colour(const DyadicInterval& interval, int colour);
  bool contains(const DyadicInterval& interval) const;
  int colour_of(const DyadicInterval& interval) const;

  /// index k -> colour, ordered left to right.
  const std::map<std::int64_t, int>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool fully_coloured() const;
  /// True when every cell of D_j is a member.
  bool covers_level() const;
  IntervalCollection collection() const;

  /// ρ(C, L): members contained in L (|L| >= 2^-j).
  std::int64_t rho(const DyadicInterval& L) const;
  /// ρ_i(C, L) for i = 1..d at positions 0..d-1; uncoloured members are skipped.
  std::vector<std::int64_t> colour_counts(const DyadicInterval& L) const;

  friend bool operator==(const ColouredCollection&, const ColouredCollection&) = default;

 private:
  void check_member(const DyadicInterval& interval) const;
  void check_colour(int colour) const;
  std::pair<std::int64_t, std::int64_t> index_range(const DyadicInterval& L) const;

  int level_ = 0;
  int colours_ = 1;
  Rational eta_{1, 2};
  std::map<std::int64_t, int> members_;
};

struct HomogeneityViolation {
  DyadicInterval L;
  std::string condition;  // "hom1" or "hom2"
  std::int64_t rho = 0;
  std::vector<std::int64_t> counts;  // ρ_1 .. ρ_d
};

struct HomogeneityVerdict {
  bool ok = true;
  std::vector<HomogeneityViolation> violations;
};

/// Tests every L with level <= j. Throws NotFullyColouredError.
HomogeneityVerdict check_homogeneous(const ColouredCollection& c);
/// Tests only L with level <= j - α where 2^α <= d < 2^(α+1).
HomogeneityVerdict check_homogeneous_reduced(const ColouredCollection& c);

struct PrevisibilityViolation {
  DyadicInterval parent;
  DyadicInterval small;  // ρ(U ∪ C, small) < d
  DyadicInterval big;    // ρ(U ∪ C, big) >= d and ρ(U, big) > 0
};

struct PrevisibilityVerdict {
  bool ok = true;
  std::vector<PrevisibilityViolation> violations;
};

/// d-previsibility of U with respect to C, both subsets of D_j. The literal
/// definition only tests a small left successor against a big right one;
/// `symmetric` also tests the mirrored orientation, which the strategy needs.
PrevisibilityVerdict check_previsible(const IntervalCollection& u, const IntervalCollection& c, int level,
                                      int colours, bool symmetric = true);

/// Left-to-right enumeration Γ_1, Γ_2, ... with Γ_l coloured ((l-1) mod d) + 1.
ColouredCollection round_robin(const IntervalCollection& c, int level, int colours,
                               Rational eta = Rational(1, 2));

struct ExtensionOutcome {
  bool applicable = false;
  PrevisibilityVerdict previsibility;
  ColouredCollection result;        // C ∪ U coloured, when applicable
  std::vector<std::string> trace;   // which proof case coloured which block
};

/// Player B's constructive colouring of U. Requires C fully coloured and
/// homogeneous (DomainError otherwise); returns applicable = false with the
/// witnesses when U is not (symmetrically) previsible.
ExtensionOutcome player_b_extend(const ColouredCollection& c, const IntervalCollection& u);

struct BruteForceOptions {
  std::uint64_t cap = std::uint64_t{1} << 20;
  bool count_only = false;
  std::size_t list_limit = 4096;
  /// Stop once this many extensions are found; 0 enumerates everything.
  std::uint64_t stop_after = 0;
  std::optional<std::chrono::milliseconds> timeout;
};

struct BruteForceResult {
  bool refused = false;
  std::uint64_t required = 0;  // d^|U|, saturating
  bool timed_out = false;
  bool stopped = false;        // stop_after reached
  std::uint64_t count = 0;     // valid extensions found (all of them unless cut short)
  std::vector<DyadicInterval> order;            // U left to right
  std::vector<std::vector<int>> extensions;     // colours in `order`, up to list_limit
};

/// Every colouring of U whose union with C passes check_homogeneous.
BruteForceResult brute_force_extensions(const ColouredCollection& c, const IntervalCollection& u,
                                        const BruteForceOptions& options = {});

struct AdversaryInstance {
  int a = 0;
  int n = 0;
  int level = 0;
  ColouredCollection initial;                         // C(0)
  std::vector<DyadicInterval> chain;                  // L_1 .. L_{n+2}
  std::vector<DyadicInterval> brothers;               // P_1 .. P_{n+1}
  std::vector<DyadicInterval> i_intervals;            // I_1 .. I_{d-1}
  std::vector<DyadicInterval> j_intervals;            // J_1 .. J_{n+1}
  std::vector<DyadicInterval> script;                 // U(k) = {J_{n-k}}, k = 0..n-1
};

/// d = 2^a, η = 1/n; needs n >= 2 (so that η <= 1/2) and j >= n + a + 1.
AdversaryInstance adversary_instance(int a, int n, int level);

}  // namespace rearr
