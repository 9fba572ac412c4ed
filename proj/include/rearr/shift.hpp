// Shift rearrangements τ_M(I_{j,k}) = I_{j,k+m_j} and their combinatorics:
// occupation counts N_j(M), Semenov constants, band decompositions and the
// level selection that turns an arbitrary shift into a sparse one.
//
// All "for every l >= j" quantifiers run up to the truncation depth carried
// by the sequence; results are finite-depth statements.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rearr/dyadic.hpp"

namespace rearr {

class ShiftSequence {
 public:
  ShiftSequence() = default;
  /// m[0] is m_1. Requires |m_j| <= 2^j.
  explicit ShiftSequence(std::vector<std::int64_t> m);

  static ShiftSequence zeros(int depth) { return ShiftSequence(std::vector<std::int64_t>(depth, 0)); }

  int depth() const { return static_cast<int>(m_.size()); }
  /// m_j for 1 <= j <= depth; m_0 is taken to be 0.
  std::int64_t m(int level) const;
  const std::vector<std::int64_t>& values() const { return m_; }

  /// Cell offset m_j reduced modulo 2^j into [0, 2^j).
  std::int64_t reduced(int level) const;
  /// x_j = (m_j mod 2^j) / 2^j in [0,1).
  Rational x(int level) const { return Rational(reduced(level), std::int64_t{1} << level); }
  /// x_j in ticks.
  Tick x_ticks(int level) const { return reduced(level) << (kMaxLevel - level); }

  Rearrangement rearrangement() const;

  friend bool operator==(const ShiftSequence&, const ShiftSequence&) = default;

 private:
  std::vector<std::int64_t> m_;
};

DyadicInterval shift_map(const ShiftSequence& m, const DyadicInterval& interval);

/// Number of level-j cells meeting {x_l : j <= l <= truncation}.
std::int64_t compute_nj(const ShiftSequence& m, int level, int truncation);
/// N_j for j = 0..truncation.
std::vector<std::int64_t> all_nj(const ShiftSequence& m, int truncation);

struct SemenovReport {
  Rational constant{0};
  DyadicInterval witness;
  int depth = 0;
};

/// |τ(Q(I) truncated at depth)^*| / |I| for one interval.
Rational semenov_ratio(const Rearrangement& tau, const DyadicInterval& interval, int depth);
/// Maximum of semenov_ratio over every I with level <= depth.
SemenovReport semenov_constant(const Rearrangement& tau, int depth);

struct Decomposition {
  std::vector<Rational> a;  // a_1..a_K
  std::vector<int> jk;      // j_0..j_K; a value of depth+1 means "beyond the truncation"
  Rational w1{1};
  Rational w2{1};
  int depth = 0;

  std::size_t bands() const { return a.size(); }
  /// 1-based band containing level j, or 0 when j < j_0 or j >= j_K.
  std::size_t band_of(int level) const;
};

struct DecompositionResult {
  bool applicable = false;
  Decomposition decomposition;
  std::optional<int> offending_level;  // last level with N_j >= 3
  std::vector<std::int64_t> nj;
  std::string diagnosis;
};

/// Inductive band extraction for sequences with N_j <= 2 on the tail.
/// The hypothesis fails when a level with N_j >= 3 lies in the second half
/// of the truncated range (2 * level > depth).
DecompositionResult extract_decomposition(const ShiftSequence& m, int depth);

struct DecomposabilityViolation {
  int level;
  std::size_t band;  // band whose condition failed
  std::string condition;
};

struct DecomposabilityReport {
  bool ok = true;
  std::vector<DecomposabilityViolation> violations;
};

DecomposabilityReport is_decomposable(const ShiftSequence& m, const Decomposition& d);

struct LevelSelection {
  bool ok = false;
  std::vector<int> levels;       // j_1 < j_2 < ...
  ShiftSequence induced;         // m'_j = m_j on selected levels, 0 elsewhere
  std::vector<std::int64_t> nj;  // N_j(M') for j = 0..depth
  /// Unselected levels where N_j(M') = 2 instead of 1 (finite-depth shadow
  /// of the claim that off-selection counts are 1).
  std::vector<int> off_selection_doubles;
  std::string diagnosis;
};

LevelSelection select_levels(const ShiftSequence& m, int depth);

}  // namespace rearr
