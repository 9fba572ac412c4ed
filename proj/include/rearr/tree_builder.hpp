// Supporting nested collections for decomposable shifts.
//
// The pipeline moves every interval into the sparse copy φ(D), replaces the
// shift by a per-band rounded shift σ there, partitions φ(D) into pieces
// F(r,l) (a colouring of the band's top level crossed with the band index
// mod 6) and grows the sets A(I) = B(I) ∪ C(I) stage by stage inside each
// piece. Every piece is then certified with verify_supporting_tree.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rearr/dyadic.hpp"
#include "rearr/shift.hpp"

namespace rearr {

/// The interval one quarter as long whose right endpoint is the midpoint of I.
DyadicInterval phi(const DyadicInterval& interval);
/// The ancestor two levels up. Requires level >= 2.
DyadicInterval psi(const DyadicInterval& interval);

/// A partition of one level into classes such that no class contains two
/// cells at offset ±1 or at offset shift + e, e in [-2, 2], from each other.
struct SplitPlan {
  int level = 0;
  std::int64_t shift = 0;
  int classes = 0;
  std::vector<int> colour;  // colour[k-1] in [0, classes) for cell I_{level,k}
  /// Some required offset is 0 mod 2^level, so cells of one class interact
  /// with themselves; the separation argument does not cover this case.
  bool self_conflict = false;
};

SplitPlan horizontal_split(int level, std::int64_t shift);

/// Pairs of same-class cells that violate the exclusions; empty when valid.
std::vector<std::pair<DyadicInterval, DyadicInterval>> split_violations(const SplitPlan& plan);

struct StageReport {
  int stage = 0;                 // n within the piece
  std::size_t band = 0;          // k_n
  std::size_t entering = 0;      // |F_n|
  Rational threshold{0};         // 2 / 2^{j'_{k_n}}
  std::size_t containment_violations = 0;
  std::size_t halo_violations = 0;
  /// Pairs neither nested nor at distance >= threshold.
  std::size_t dichotomy_violations = 0;
  /// The subset of those pairs whose sets actually intersect.
  std::size_t overlap_violations = 0;
  std::size_t diameter_violations = 0;  // sets entering at this stage
  std::vector<std::string> witnesses;   // first few failures, human readable
};

struct TreePiece {
  int r = 0;  // 1..6
  int l = 0;  // 1-based class
  IntervalCollection family;
  NestedFamily sets;
  SupportCertificate certificate;
  Rational min_set_ratio{0};  // min |A(I)| / |I|
  std::vector<StageReport> stages;
  bool ok = false;  // verdict, δ >= 1/2, 2 <= |A|/|I| <= 20/3
};

struct LevelAdjustment {
  int level = 0;
  std::size_t band = 0;
  int delta_star = 0;          // in {-1, 0, 1}
  Rational overlap{0};         // |(x_j + δ*|I| + I) ∩ (a_k + I)| / |I|
  std::int64_t composed_offset = 0;  // ψσφ(I) minus τ(I), in cells of level j
};

struct TreeBuild {
  bool refused = false;
  std::string refusal;
  int depth = 0;
  bool degenerate = false;  // no bands: identity σ with A(I) = I ∪ (I + 1/2)
  Rearrangement sigma;      // acts on φ-levels, depth + 2 deep
  std::vector<SplitPlan> splits;  // splits[k-1] for band k
  std::vector<LevelAdjustment> adjustments;
  std::vector<TreePiece> pieces;
  std::vector<int> unprocessed_levels;
  std::vector<std::string> notices;
  bool ok = false;
};

/// Executes the construction on a decomposable shift truncated at `depth`.
TreeBuild build_supporting_tree(const ShiftSequence& m, const Decomposition& d, int depth);

}  // namespace rearr
