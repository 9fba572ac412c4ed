// Exact arithmetic on dyadic intervals, finite unions of intervals with
// dyadic endpoints, level-preserving rearrangements and nested families.
//
// Every endpoint is stored as an integer number of "ticks", one tick being
// 2^-kMaxLevel. Measures and ratios are returned as exact rationals.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

namespace rearr {

using Rational = boost::rational<std::int64_t>;
using Tick = std::int64_t;

inline constexpr int kMaxLevel = 30;
inline constexpr Tick kUnit = Tick{1} << kMaxLevel;

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

std::string to_string(const Rational& r);

/// The dyadic interval I_{j,k} = [(k-1)2^-j, k 2^-j), 1 <= k <= 2^j.
class DyadicInterval {
 public:
  DyadicInterval() = default;
  DyadicInterval(int level, std::int64_t index);

  int level() const { return level_; }
  std::int64_t index() const { return index_; }

  Tick lo() const { return (index_ - 1) * length(); }
  Tick hi() const { return index_ * length(); }
  Tick length() const { return Tick{1} << (kMaxLevel - level_); }
  Rational measure() const { return Rational(1, std::int64_t{1} << level_); }

  bool contains(const DyadicInterval& other) const {
    return other.level_ >= level_ && other.lo() >= lo() && other.hi() <= hi();
  }
  bool intersects(const DyadicInterval& other) const {
    return contains(other) || other.contains(*this);
  }

  /// Ancestor at the given (coarser or equal) level.
  DyadicInterval ancestor(int level) const;
  DyadicInterval parent() const { return ancestor(level_ - 1); }
  DyadicInterval left_child() const;
  DyadicInterval right_child() const;

  /// Neighbour `offset` cells to the right on the same level, wrapping mod 1.
  DyadicInterval translated(std::int64_t offset) const;

  std::int64_t cells_on_level() const { return std::int64_t{1} << level_; }

  friend auto operator<=>(const DyadicInterval&, const DyadicInterval&) = default;

 private:
  int level_ = 0;
  std::int64_t index_ = 1;
};

std::string to_string(const DyadicInterval& interval);

inline DyadicInterval make_interval(int level, std::int64_t index) {
  return DyadicInterval(level, index);
}

/// Sorted disjoint union of half-open intervals [lo, hi) given in ticks.
/// Adjacent pieces are merged, so the representation is canonical.
class IntervalSet {
 public:
  struct Piece {
    Tick lo;
    Tick hi;
    friend bool operator==(const Piece&, const Piece&) = default;
  };

  IntervalSet() = default;
  explicit IntervalSet(const DyadicInterval& interval);
  IntervalSet(Tick lo, Tick hi);
  /// Builds the union of arbitrary (possibly overlapping) pieces.
  static IntervalSet from_pieces(std::vector<Piece> pieces);

  const std::vector<Piece>& pieces() const { return pieces_; }
  bool empty() const { return pieces_.empty(); }

  Tick measure_ticks() const;
  Rational measure() const { return Rational(measure_ticks(), kUnit); }

  IntervalSet unite(const IntervalSet& other) const;
  IntervalSet intersect(const IntervalSet& other) const;
  IntervalSet translated(Tick offset) const;
  /// Reduces every piece modulo 1, i.e. maps the set onto the circle [0,1).
  IntervalSet wrapped() const;

  bool contains(const IntervalSet& other) const;
  bool intersects(const IntervalSet& other) const;

  /// Euclidean distance between the closures; 0 when they touch or overlap.
  /// Undefined (returns nullopt) when either set is empty.
  std::optional<Tick> distance(const IntervalSet& other) const;
  /// Distance on the circle R/Z; both sets must lie in [0,1).
  std::optional<Tick> circular_distance(const IntervalSet& other) const;

  Tick lower() const { return pieces_.front().lo; }
  Tick upper() const { return pieces_.back().hi; }

  friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

 private:
  std::vector<Piece> pieces_;
};

std::string to_string(const IntervalSet& set);

/// A finite set of dyadic intervals.
class IntervalCollection {
 public:
  IntervalCollection() = default;
  IntervalCollection(std::initializer_list<DyadicInterval> members)
      : members_(members) {}
  template <typename It>
  IntervalCollection(It first, It last) : members_(first, last) {}

  void insert(const DyadicInterval& interval) { members_.insert(interval); }
  bool contains(const DyadicInterval& interval) const {
    return members_.count(interval) != 0;
  }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  /// Members lying on a single level.
  IntervalCollection on_level(int level) const;
  int max_level() const;

  /// The pointset E^* covered by the collection.
  IntervalSet pointset() const;

  friend bool operator==(const IntervalCollection&, const IntervalCollection&) = default;

 private:
  std::set<DyadicInterval> members_;
};

/// All dyadic subintervals of `interval` down to level `max_level`.
IntervalCollection q_collection(const DyadicInterval& interval, int max_level);

Rational pointset_measure(const IntervalCollection& collection);

/// A level-preserving bijection of the dyadic intervals up to some depth.
/// Each level is either an explicit permutation table or a cyclic shift.
class Rearrangement {
 public:
  Rearrangement() = default;

  static Rearrangement identity(int depth);
  /// Level l is translated by offsets[l] cells (mod 2^l); offsets[0] is ignored.
  static Rearrangement shifts(std::vector<std::int64_t> offsets);
  /// Figiel's shift I -> I + m|I| on every level up to depth.
  static Rearrangement figiel(std::int64_t m, int depth);
  /// `tables[l]` is a 0-based permutation of {0, ..., 2^l - 1}.
  static Rearrangement from_tables(std::vector<std::vector<std::int64_t>> tables);

  int depth() const { return static_cast<int>(levels_.size()) - 1; }
  DyadicInterval operator()(const DyadicInterval& interval) const;
  Rearrangement inverse() const;

  /// Replaces a level by an explicit permutation.
  void set_table(int level, std::vector<std::int64_t> table);
  void set_shift(int level, std::int64_t offset);

 private:
  struct Level {
    std::int64_t offset = 0;
    std::vector<std::int64_t> table;  // empty: pure cyclic shift
  };
  std::vector<Level> levels_;
};

/// A map I -> A(I) of interval unions, the candidate supporting tree.
using NestedFamily = std::map<DyadicInterval, IntervalSet>;

struct NestednessViolation {
  DyadicInterval first;
  DyadicInterval second;
};

/// Pairs (I, J) whose sets intersect without one containing the other.
/// Returns at most `limit` witnesses.
std::vector<NestednessViolation> nestedness_violations(const NestedFamily& family,
                                                       std::size_t limit = 16);

class IncompleteFamilyError : public std::invalid_argument {
 public:
  explicit IncompleteFamilyError(const DyadicInterval& missing);
  const DyadicInterval& missing() const { return missing_; }

 private:
  DyadicInterval missing_;
};

struct SupportRecord {
  DyadicInterval interval;
  Rational set_ratio;     // |A_I| / |I|
  Rational own_ratio;     // |I ∩ A_I| / |I|
  Rational image_ratio;   // |τ(I) ∩ A_I| / |I|
};

struct SupportCertificate {
  Rational c{0};      // smallest admissible C = max |A_I|/|I|
  Rational delta{0};  // largest admissible δ = min of own/image ratios
  bool nested = true;
  std::vector<NestednessViolation> violations;
  std::vector<SupportRecord> records;
  bool verdict = false;
};

SupportCertificate verify_supporting_tree(const Rearrangement& tau,
                                          const IntervalCollection& family,
                                          const NestedFamily& sets);

/// The stricter "dyadic tree of sets" notion: |I|/C <= |E_I| <= C|I| and,
/// when both children of I are present, E_{I'} ∪ E_{I''} ⊆ E_I with
/// E_{I'} ∩ E_{I''} = ∅.
struct DyadicTreeReport {
  Rational c{0};  // smallest C satisfying the two-sided measure bound
  bool ok = true;
  std::vector<std::string> problems;
};

DyadicTreeReport check_dyadic_tree(const NestedFamily& sets);

}  // namespace rearr
