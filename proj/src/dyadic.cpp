#include "rearr/dyadic.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

namespace rearr {

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

// ---------------------------------------------------------------------------
// DyadicInterval

DyadicInterval::DyadicInterval(int level, std::int64_t index) : level_(level), index_(index) {
  if (level < 0 || level > kMaxLevel) {
    throw DomainError("dyadic level " + std::to_string(level) + " outside [0, " +
                      std::to_string(kMaxLevel) + "]");
  }
  if (index < 1 || index > (std::int64_t{1} << level)) {
    throw DomainError("dyadic index " + std::to_string(index) + " outside [1, 2^" +
                      std::to_string(level) + "]");
  }
}

DyadicInterval DyadicInterval::ancestor(int level) const {
  if (level < 0 || level > level_) {
    throw DomainError("no ancestor of " + to_string(*this) + " at level " + std::to_string(level));
  }
  return DyadicInterval(level, ((index_ - 1) >> (level_ - level)) + 1);
}

DyadicInterval DyadicInterval::left_child() const {
  return DyadicInterval(level_ + 1, 2 * index_ - 1);
}

DyadicInterval DyadicInterval::right_child() const {
  return DyadicInterval(level_ + 1, 2 * index_);
}

DyadicInterval DyadicInterval::translated(std::int64_t offset) const {
  const std::int64_t n = cells_on_level();
  std::int64_t k = (index_ - 1 + offset) % n;
  if (k < 0) k += n;
  return DyadicInterval(level_, k + 1);
}

std::string to_string(const DyadicInterval& interval) {
  return "I(" + std::to_string(interval.level()) + "," + std::to_string(interval.index()) + ")";
}

// ---------------------------------------------------------------------------
// IntervalSet

IntervalSet::IntervalSet(const DyadicInterval& interval) : IntervalSet(interval.lo(), interval.hi()) {}

IntervalSet::IntervalSet(Tick lo, Tick hi) {
  if (lo < hi) pieces_.push_back({lo, hi});
}

IntervalSet IntervalSet::from_pieces(std::vector<Piece> pieces) {
  std::erase_if(pieces, [](const Piece& p) { return p.lo >= p.hi; });
  std::sort(pieces.begin(), pieces.end(),
            [](const Piece& a, const Piece& b) { return a.lo < b.lo; });
  IntervalSet out;
  for (const Piece& p : pieces) {
    if (!out.pieces_.empty() && p.lo <= out.pieces_.back().hi) {
      out.pieces_.back().hi = std::max(out.pieces_.back().hi, p.hi);
    } else {
      out.pieces_.push_back(p);
    }
  }
  return out;
}

Tick IntervalSet::measure_ticks() const {
  Tick total = 0;
  for (const Piece& p : pieces_) total += p.hi - p.lo;
  return total;
}

IntervalSet IntervalSet::unite(const IntervalSet& other) const {
  std::vector<Piece> all = pieces_;
  all.insert(all.end(), other.pieces_.begin(), other.pieces_.end());
  return from_pieces(std::move(all));
}

IntervalSet IntervalSet::intersect(const IntervalSet& other) const {
  IntervalSet out;
  std::size_t a = 0;
  std::size_t b = 0;
  while (a < pieces_.size() && b < other.pieces_.size()) {
    const Tick lo = std::max(pieces_[a].lo, other.pieces_[b].lo);
    const Tick hi = std::min(pieces_[a].hi, other.pieces_[b].hi);
    if (lo < hi) out.pieces_.push_back({lo, hi});
    if (pieces_[a].hi < other.pieces_[b].hi) {
      ++a;
    } else {
      ++b;
    }
  }
  return out;
}

IntervalSet IntervalSet::translated(Tick offset) const {
  IntervalSet out = *this;
  for (Piece& p : out.pieces_) {
    p.lo += offset;
    p.hi += offset;
  }
  return out;
}

IntervalSet IntervalSet::wrapped() const {
  std::vector<Piece> out;
  for (const Piece& p : pieces_) {
    if (p.hi - p.lo >= kUnit) return IntervalSet(0, kUnit);
    Tick lo = p.lo % kUnit;
    if (lo < 0) lo += kUnit;
    const Tick hi = lo + (p.hi - p.lo);
    if (hi <= kUnit) {
      out.push_back({lo, hi});
    } else {
      out.push_back({lo, kUnit});
      out.push_back({0, hi - kUnit});
    }
  }
  return from_pieces(std::move(out));
}

bool IntervalSet::contains(const IntervalSet& other) const {
  return intersect(other).measure_ticks() == other.measure_ticks();
}

bool IntervalSet::intersects(const IntervalSet& other) const {
  return intersect(other).measure_ticks() > 0;
}

std::optional<Tick> IntervalSet::distance(const IntervalSet& other) const {
  if (empty() || other.empty()) return std::nullopt;
  Tick best = std::numeric_limits<Tick>::max();
  std::size_t a = 0;
  std::size_t b = 0;
  while (a < pieces_.size() && b < other.pieces_.size()) {
    const Piece& p = pieces_[a];
    const Piece& q = other.pieces_[b];
    const Tick gap = std::max(p.lo, q.lo) - std::min(p.hi, q.hi);
    best = std::min(best, std::max<Tick>(gap, 0));
    if (p.hi < q.hi) {
      ++a;
    } else {
      ++b;
    }
  }
  return best;
}

std::optional<Tick> IntervalSet::circular_distance(const IntervalSet& other) const {
  auto d = distance(other);
  if (!d) return d;
  *d = std::min({*d, *distance(other.translated(kUnit)), *distance(other.translated(-kUnit))});
  return d;
}

std::string to_string(const IntervalSet& set) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& p : set.pieces()) {
    if (!first) os << ", ";
    first = false;
    os << "[" << to_string(Rational(p.lo, kUnit)) << "," << to_string(Rational(p.hi, kUnit)) << ")";
  }
  os << "}";
  return os.str();
}

// ---------------------------------------------------------------------------
// Collections

IntervalCollection IntervalCollection::on_level(int level) const {
  IntervalCollection out;
  for (const auto& i : members_) {
    if (i.level() == level) out.insert(i);
  }
  return out;
}

int IntervalCollection::max_level() const {
  int m = -1;
  for (const auto& i : members_) m = std::max(m, i.level());
  return m;
}

IntervalSet IntervalCollection::pointset() const {
  std::vector<IntervalSet::Piece> pieces;
  pieces.reserve(members_.size());
  for (const auto& i : members_) pieces.push_back({i.lo(), i.hi()});
  return IntervalSet::from_pieces(std::move(pieces));
}

IntervalCollection q_collection(const DyadicInterval& interval, int max_level) {
  if (max_level < interval.level()) {
    throw DomainError("q_collection: max level " + std::to_string(max_level) +
                      " is coarser than " + to_string(interval));
  }
  if (max_level > kMaxLevel) throw DomainError("q_collection: max level beyond supported depth");
  IntervalCollection out;
  for (int l = interval.level(); l <= max_level; ++l) {
    const int shift = l - interval.level();
    const std::int64_t first = ((interval.index() - 1) << shift) + 1;
    const std::int64_t count = std::int64_t{1} << shift;
    for (std::int64_t k = first; k < first + count; ++k) out.insert(DyadicInterval(l, k));
  }
  return out;
}

Rational pointset_measure(const IntervalCollection& collection) {
  return collection.pointset().measure();
}

// ---------------------------------------------------------------------------
// Rearrangement

Rearrangement Rearrangement::identity(int depth) {
  if (depth < 0 || depth > kMaxLevel) throw DomainError("rearrangement depth out of range");
  Rearrangement r;
  r.levels_.resize(static_cast<std::size_t>(depth) + 1);
  return r;
}

Rearrangement Rearrangement::shifts(std::vector<std::int64_t> offsets) {
  if (offsets.empty() || offsets.size() > kMaxLevel + 1) {
    throw DomainError("rearrangement depth out of range");
  }
  Rearrangement r;
  r.levels_.resize(offsets.size());
  for (std::size_t l = 0; l < offsets.size(); ++l) r.set_shift(static_cast<int>(l), offsets[l]);
  return r;
}

Rearrangement Rearrangement::figiel(std::int64_t m, int depth) {
  return shifts(std::vector<std::int64_t>(static_cast<std::size_t>(depth) + 1, m));
}

Rearrangement Rearrangement::from_tables(std::vector<std::vector<std::int64_t>> tables) {
  Rearrangement r = identity(static_cast<int>(tables.size()) - 1);
  for (std::size_t l = 0; l < tables.size(); ++l) r.set_table(static_cast<int>(l), std::move(tables[l]));
  return r;
}

void Rearrangement::set_shift(int level, std::int64_t offset) {
  const std::int64_t n = std::int64_t{1} << level;
  offset %= n;
  if (offset < 0) offset += n;
  levels_.at(static_cast<std::size_t>(level)) = Level{offset, {}};
}

void Rearrangement::set_table(int level, std::vector<std::int64_t> table) {
  const std::int64_t n = std::int64_t{1} << level;
  if (static_cast<std::int64_t>(table.size()) != n) {
    throw DomainError("permutation table for level " + std::to_string(level) + " has wrong size");
  }
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (std::int64_t v : table) {
    if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)]) {
      throw DomainError("table for level " + std::to_string(level) + " is not a permutation");
    }
    seen[static_cast<std::size_t>(v)] = 1;
  }
  levels_.at(static_cast<std::size_t>(level)) = Level{0, std::move(table)};
}

DyadicInterval Rearrangement::operator()(const DyadicInterval& interval) const {
  if (interval.level() > depth()) {
    throw DomainError("rearrangement of depth " + std::to_string(depth()) + " cannot map " +
                      to_string(interval));
  }
  const Level& level = levels_[static_cast<std::size_t>(interval.level())];
  if (level.table.empty()) return interval.translated(level.offset);
  return DyadicInterval(interval.level(),
                        level.table[static_cast<std::size_t>(interval.index() - 1)] + 1);
}

Rearrangement Rearrangement::inverse() const {
  Rearrangement r = *this;
  for (std::size_t l = 0; l < levels_.size(); ++l) {
    const Level& level = levels_[l];
    if (level.table.empty()) {
      r.set_shift(static_cast<int>(l), -level.offset);
    } else {
      std::vector<std::int64_t> inv(level.table.size());
      for (std::size_t k = 0; k < level.table.size(); ++k) {
        inv[static_cast<std::size_t>(level.table[k])] = static_cast<std::int64_t>(k);
      }
      r.levels_[l] = Level{0, std::move(inv)};
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Nested families and supporting trees

std::vector<NestednessViolation> nestedness_violations(const NestedFamily& family,
                                                       std::size_t limit) {
  // Sweep over pieces sorted by left end; only sets sharing a point can
  // violate nestedness, so candidate pairs come from overlapping pieces.
  struct Event {
    Tick lo;
    Tick hi;
    const NestedFamily::value_type* owner;
  };
  std::vector<Event> events;
  for (const auto& entry : family) {
    for (const auto& p : entry.second.pieces()) events.push_back({p.lo, p.hi, &entry});
  }
  std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) { return a.lo < b.lo; });

  std::set<std::pair<DyadicInterval, DyadicInterval>> checked;
  std::vector<NestednessViolation> out;
  std::vector<const Event*> active;
  for (const Event& e : events) {
    std::erase_if(active, [&](const Event* a) { return a->hi <= e.lo; });
    for (const Event* a : active) {
      if (a->owner == e.owner) continue;
      auto key = std::minmax(a->owner->first, e.owner->first);
      if (!checked.insert(key).second) continue;
      const IntervalSet& x = a->owner->second;
      const IntervalSet& y = e.owner->second;
      if (!x.contains(y) && !y.contains(x)) {
        out.push_back({key.first, key.second});
        if (out.size() >= limit) return out;
      }
    }
    active.push_back(&e);
  }
  return out;
}

IncompleteFamilyError::IncompleteFamilyError(const DyadicInterval& missing)
    : std::invalid_argument("nested family has no entry for " + to_string(missing)),
      missing_(missing) {}

SupportCertificate verify_supporting_tree(const Rearrangement& tau,
                                          const IntervalCollection& family,
                                          const NestedFamily& sets) {
  SupportCertificate cert;
  NestedFamily restricted;
  bool first = true;
  for (const DyadicInterval& interval : family) {
    auto it = sets.find(interval);
    if (it == sets.end()) throw IncompleteFamilyError(interval);
    const IntervalSet& a = it->second;
    const Tick len = interval.length();
    SupportRecord rec{interval, Rational(a.measure_ticks(), len),
                      Rational(a.intersect(IntervalSet(interval)).measure_ticks(), len),
                      Rational(a.intersect(IntervalSet(tau(interval))).measure_ticks(), len)};
    const Rational worst = std::min(rec.own_ratio, rec.image_ratio);
    if (first) {
      cert.c = rec.set_ratio;
      cert.delta = worst;
      first = false;
    } else {
      cert.c = std::max(cert.c, rec.set_ratio);
      cert.delta = std::min(cert.delta, worst);
    }
    cert.records.push_back(rec);
    restricted.emplace(interval, a);
  }
  cert.violations = nestedness_violations(restricted);
  cert.nested = cert.violations.empty();
  cert.verdict = cert.nested && (family.empty() || cert.delta > 0);
  return cert;
}

DyadicTreeReport check_dyadic_tree(const NestedFamily& sets) {
  DyadicTreeReport report;
  bool first = true;
  for (const auto& [interval, set] : sets) {
    const Rational ratio(set.measure_ticks(), interval.length());
    if (ratio == Rational(0)) {
      report.ok = false;
      report.problems.push_back("empty set at " + to_string(interval));
      continue;
    }
    const Rational c = std::max(ratio, Rational(1) / ratio);
    report.c = first ? c : std::max(report.c, c);
    first = false;
    if (interval.level() >= kMaxLevel) continue;
    auto left = sets.find(interval.left_child());
    auto right = sets.find(interval.right_child());
    if (left == sets.end() || right == sets.end()) continue;
    if (!set.contains(left->second.unite(right->second))) {
      report.ok = false;
      report.problems.push_back("children not contained at " + to_string(interval));
    }
    if (left->second.intersects(right->second)) {
      report.ok = false;
      report.problems.push_back("children overlap at " + to_string(interval));
    }
  }
  return report;
}

}  // namespace rearr
