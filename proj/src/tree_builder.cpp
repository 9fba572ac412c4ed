#include "rearr/tree_builder.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_set>

namespace rearr {

DyadicInterval phi(const DyadicInterval& interval) {
  if (interval.level() + 2 > kMaxLevel) throw DomainError("phi: level too deep");
  return DyadicInterval(interval.level() + 2, 4 * (interval.index() - 1) + 2);
}

DyadicInterval psi(const DyadicInterval& interval) {
  if (interval.level() < 2) throw DomainError("psi needs level >= 2, got " + to_string(interval));
  return interval.ancestor(interval.level() - 2);
}

// ---------------------------------------------------------------------------
// Horizontal split

namespace {

std::int64_t mod(std::int64_t a, std::int64_t n) {
  const std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

std::vector<std::int64_t> excluded_offsets(std::int64_t shift) {
  std::vector<std::int64_t> out{1, -1};
  for (std::int64_t e = -2; e <= 2; ++e) out.push_back(shift + e);
  return out;
}

}  // namespace

SplitPlan horizontal_split(int level, std::int64_t shift) {
  if (level < 0 || level > 24) throw DomainError("horizontal_split: level out of range");
  const std::int64_t n = std::int64_t{1} << level;
  if (shift > n || shift < -n) throw DomainError("horizontal_split: |m| exceeds 2^level");
  SplitPlan plan;
  plan.level = level;
  plan.shift = shift;
  plan.colour.assign(static_cast<std::size_t>(n), -1);
  // Only the offsets that can bring a + J next to I make a class interact
  // with itself; the wider ±2 margin is a safety band.
  for (std::int64_t e = -1; e <= 2; ++e) {
    if (mod(shift + e, n) == 0) plan.self_conflict = true;
  }

  std::vector<std::int64_t> offsets;
  for (std::int64_t o : excluded_offsets(shift)) {
    const std::int64_t r = mod(o, n);
    if (r == 0) continue;
    offsets.push_back(r);
    offsets.push_back(mod(-o, n));
  }
  std::sort(offsets.begin(), offsets.end());
  offsets.erase(std::unique(offsets.begin(), offsets.end()), offsets.end());

  for (std::int64_t i = 0; i < n; ++i) {
    std::vector<bool> used(offsets.size() + 1, false);
    for (std::int64_t o : offsets) {
      const int c = plan.colour[static_cast<std::size_t>(mod(i + o, n))];
      if (c >= 0 && static_cast<std::size_t>(c) < used.size()) used[static_cast<std::size_t>(c)] = true;
    }
    int c = 0;
    while (used[static_cast<std::size_t>(c)]) ++c;
    plan.colour[static_cast<std::size_t>(i)] = c;
    plan.classes = std::max(plan.classes, c + 1);
  }
  return plan;
}

std::vector<std::pair<DyadicInterval, DyadicInterval>> split_violations(const SplitPlan& plan) {
  std::vector<std::pair<DyadicInterval, DyadicInterval>> out;
  const std::int64_t n = std::int64_t{1} << plan.level;
  for (std::int64_t i = 0; i < n; ++i) {
    for (std::int64_t o : excluded_offsets(plan.shift)) {
      const std::int64_t j = mod(i + o, n);
      if (j == i) continue;
      if (plan.colour[static_cast<std::size_t>(i)] == plan.colour[static_cast<std::size_t>(j)]) {
        out.emplace_back(DyadicInterval(plan.level, i + 1), DyadicInterval(plan.level, j + 1));
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Geometry on the circle

namespace {

using Piece = IntervalSet::Piece;

IntervalSet circle_translate(const IntervalSet& s, Tick offset) {
  return s.translated(offset).wrapped();
}

/// Length of the shortest arc containing the set.
Tick circular_diameter(const IntervalSet& s) {
  const auto& p = s.pieces();
  if (p.empty()) return 0;
  Tick gap = kUnit - p.back().hi + p.front().lo;
  for (std::size_t i = 1; i < p.size(); ++i) gap = std::max(gap, p[i].lo - p[i - 1].hi);
  return kUnit - gap;
}

/// Circle distance from a point to a set, both in doubled ticks.
Tick point_distance2(Tick x2, const IntervalSet& target) {
  const Tick unit2 = 2 * kUnit;
  Tick best = unit2;
  for (const Piece& p : target.pieces()) {
    const Tick lo = 2 * p.lo;
    const Tick hi = 2 * p.hi;
    if (x2 >= lo && x2 <= hi) return 0;
    for (Tick e : {lo, hi}) {
      const Tick d = std::abs(x2 - e);
      best = std::min({best, d, unit2 - d});
    }
  }
  return best;
}

/// sup over t in `s` of dist(t, target) on the circle, in doubled ticks.
Tick sup_distance2(const IntervalSet& s, const IntervalSet& target) {
  std::vector<Tick> gap_mids;
  const auto& tp = target.pieces();
  for (std::size_t i = 0; i < tp.size(); ++i) {
    const Tick a = tp[i].hi;
    const Tick b = i + 1 < tp.size() ? tp[i + 1].lo : tp.front().lo + kUnit;
    gap_mids.push_back((a + b) % (2 * kUnit));  // doubled midpoint, may exceed 2U
  }
  Tick best = 0;
  for (const Piece& p : s.pieces()) {
    best = std::max({best, point_distance2(2 * p.lo, target), point_distance2(2 * p.hi, target)});
    for (Tick m2 : gap_mids) {
      for (Tick c : {m2, m2 - 2 * kUnit, m2 + 2 * kUnit}) {
        if (c > 2 * p.lo && c < 2 * p.hi) best = std::max(best, point_distance2(c, target));
      }
    }
  }
  return best;
}

/// dist <= F_m |I| with F_m = 2 Σ_{i=1}^m 4^-i = 2(4^m - 1) / (3 * 4^m).
bool within_halo(Tick sup2, int m, Tick length) {
  if (m <= 0) return sup2 == 0;
  const int e = std::min(m, 40);
  const __int128 four_m = static_cast<__int128>(1) << (2 * e);
  // sup2 / 2 <= 2 (4^m - 1) L / (3 * 4^m)  <=>  3 * 4^m * sup2 <= 4 (4^m - 1) L
  return 3 * four_m * sup2 <= 4 * (four_m - 1) * static_cast<__int128>(length);
}

struct Tagged {
  Tick lo;
  Tick hi;
  std::size_t group;
};

/// Pairs of groups (g1 < g2) owning pieces within distance `thr` on the
/// circle; `inclusive` decides whether distance exactly thr counts as close.
std::unordered_set<std::uint64_t> close_groups(std::vector<Tagged> items, Tick thr, bool inclusive) {
  const std::size_t n = items.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (items[i].lo <= thr) items.push_back({items[i].lo + kUnit, items[i].hi + kUnit, items[i].group});
  }
  std::sort(items.begin(), items.end(), [](const Tagged& a, const Tagged& b) { return a.lo < b.lo; });
  std::unordered_set<std::uint64_t> pairs;
  std::vector<Tagged> active;
  for (const Tagged& p : items) {
    std::erase_if(active, [&](const Tagged& q) {
      const Tick gap = p.lo - q.hi;
      return inclusive ? gap > thr : gap >= thr;
    });
    for (const Tagged& q : active) {
      if (q.group == p.group) continue;
      const std::uint64_t a = std::min(p.group, q.group);
      const std::uint64_t b = std::max(p.group, q.group);
      pairs.insert((a << 32) | b);
    }
    active.push_back(p);
  }
  return pairs;
}

void push_pieces(std::vector<Tagged>& out, const IntervalSet& s, std::size_t group) {
  for (const Piece& p : s.pieces()) out.push_back({p.lo, p.hi, group});
}

Tick anchor_ticks(const Rational& a) {
  if (a < 0 || a >= 1) throw DomainError("anchor a_k must lie in [0,1)");
  const std::int64_t den = a.denominator();
  if ((den & (den - 1)) != 0 || den > kUnit) throw DomainError("anchor a_k is not a dyadic rational");
  return a.numerator() * (kUnit / den);
}

struct Member {
  DyadicInterval interval;  // φ-interval
  int stage;
  Tick anchor;
  IntervalSet b;
  IntervalSet c;
  IntervalSet a() const { return b.unite(c); }
};

constexpr std::size_t kWitnessLimit = 6;

void witness(StageReport& report, std::string text) {
  if (report.witnesses.size() < kWitnessLimit) report.witnesses.push_back(std::move(text));
}

/// Stage invariants for every member after stage n.
void check_stage(StageReport& report, const std::vector<Member>& members, int n, Tick thr) {
  std::vector<Tagged> items;
  std::vector<IntervalSet> a_sets;
  a_sets.reserve(members.size());
  for (std::size_t i = 0; i < members.size(); ++i) {
    const Member& mem = members[i];
    const IntervalSet own(mem.interval);
    const IntervalSet shifted = circle_translate(own, mem.anchor);
    if (!mem.b.contains(own) || !mem.c.contains(shifted)) {
      ++report.containment_violations;
      witness(report, "containment fails at " + to_string(mem.interval));
    }
    const int m = n - mem.stage;
    const Tick len = mem.interval.length();
    if (!within_halo(sup_distance2(mem.b, own), m, len) ||
        !within_halo(sup_distance2(mem.c, shifted), m, len)) {
      ++report.halo_violations;
      witness(report, "halo bound F_" + std::to_string(m) + " exceeded at " + to_string(mem.interval));
    }
    a_sets.push_back(mem.a());
    push_pieces(items, a_sets.back(), i);
  }
  for (std::uint64_t key : close_groups(std::move(items), thr, false)) {
    std::size_t i = key >> 32;
    std::size_t j = key & 0xffffffffULL;
    if (members[i].interval.level() < members[j].interval.level()) std::swap(i, j);
    // members[i] is now the shorter (or equally long) interval.
    const bool nested = a_sets[j].contains(a_sets[i]) ||
                        (members[i].interval.level() == members[j].interval.level() &&
                         a_sets[i].contains(a_sets[j]));
    if (!nested) {
      ++report.dichotomy_violations;
      if (a_sets[i].intersects(a_sets[j])) ++report.overlap_violations;
      witness(report, "A(" + to_string(members[i].interval) + ") and A(" + to_string(members[j].interval) +
                          ") are neither nested nor separated");
    }
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Builder

namespace {

TreeBuild degenerate_build(int depth) {
  TreeBuild out;
  out.depth = depth;
  out.degenerate = true;
  out.sigma = Rearrangement::identity(depth + 2);
  out.notices.push_back("no bands: σ is the identity and A(I) = I ∪ (I + 1/2)");
  TreePiece piece;
  piece.r = 1;
  piece.l = 1;
  for (int j = 0; j <= depth; ++j) {
    for (std::int64_t k = 1; k <= (std::int64_t{1} << j); ++k) {
      const DyadicInterval f = phi(DyadicInterval(j, k));
      piece.family.insert(f);
      const IntervalSet own(f);
      piece.sets.emplace(f, own.unite(circle_translate(own, kUnit / 2)));
    }
  }
  piece.certificate = verify_supporting_tree(out.sigma, piece.family, piece.sets);
  piece.min_set_ratio = Rational(2);
  for (const auto& rec : piece.certificate.records) piece.min_set_ratio = std::min(piece.min_set_ratio, rec.set_ratio);
  piece.ok = piece.certificate.verdict && piece.certificate.delta >= Rational(1, 2) &&
             piece.certificate.c <= Rational(20, 3) && piece.min_set_ratio >= Rational(2);
  out.ok = piece.ok;
  out.pieces.push_back(std::move(piece));
  return out;
}

}  // namespace

TreeBuild build_supporting_tree(const ShiftSequence& m, const Decomposition& d, int depth) {
  TreeBuild out;
  out.depth = depth;
  if (depth < 1 || depth > m.depth()) {
    out.refused = true;
    out.refusal = "depth must lie in [1, length of the shift sequence]";
    return out;
  }
  if (depth + 3 > kMaxLevel) {
    out.refused = true;
    out.refusal = "depth too large: φ-levels and thresholds need depth + 3 <= 30";
    return out;
  }
  Decomposition dd = d;
  dd.depth = depth;
  const DecomposabilityReport check = is_decomposable(m, dd);
  if (!check.ok) {
    out.refused = true;
    const auto& v = check.violations.front();
    out.refusal = "decomposition fails at level " + std::to_string(v.level) + ": " + v.condition;
    return out;
  }
  if (d.a.empty()) return degenerate_build(depth);

  const std::size_t bands = d.a.size();
  std::vector<Tick> anchor(bands + 1, 0);
  for (std::size_t k = 1; k <= bands; ++k) {
    try {
      anchor[k] = anchor_ticks(d.a[k - 1]);
    } catch (const DomainError& e) {
      out.refused = true;
      out.refusal = std::string(e.what()) + " (band " + std::to_string(k) + ")";
      return out;
    }
  }
  // Band k covers original levels [lo_k, hi_k).
  auto band_lo = [&](std::size_t k) { return d.jk[k - 1]; };
  auto band_hi = [&](std::size_t k) { return std::min(d.jk[k], depth + 1); };
  // j'_k = j_k + 2, with the end of the truncated range standing in for j_K.
  auto jprime = [&](std::size_t k) { return std::min(d.jk[k], depth + 1) + 2; };

  for (int j = 0; j < std::min(d.jk.front(), depth + 1); ++j) out.unprocessed_levels.push_back(j);
  for (int j = d.jk.back(); j <= depth; ++j) out.unprocessed_levels.push_back(j);
  if (!out.unprocessed_levels.empty()) {
    out.notices.push_back(std::to_string(out.unprocessed_levels.size()) +
                          " levels lie outside every band and are left unprocessed");
  }

  // σ on φ-levels: shift by a_k rounded to the nearest cell.
  std::vector<std::int64_t> offsets(static_cast<std::size_t>(depth) + 3, 0);
  for (std::size_t k = 1; k <= bands; ++k) {
    for (int j = band_lo(k); j < band_hi(k); ++j) {
      const int jp = j + 2;
      const Tick cell = Tick{1} << (kMaxLevel - jp);
      offsets[static_cast<std::size_t>(jp)] = (anchor[k] + cell / 2) / cell;
    }
  }
  out.sigma = Rearrangement::shifts(offsets);

  // Relation between the adjusted shift and τ on the original levels.
  for (std::size_t k = 1; k <= bands; ++k) {
    for (int j = band_lo(k); j < band_hi(k); ++j) {
      LevelAdjustment adj;
      adj.level = j;
      adj.band = k;
      const Rational unit(1, std::int64_t{1} << j);
      Rational best(-1);
      for (int delta : {0, -1, 1}) {
        Rational diff = m.x(j) + delta * unit - d.a[k - 1];
        while (diff >= 1) diff -= 1;
        while (diff < 0) diff += 1;
        const Rational circ = std::min(diff, 1 - diff);
        const Rational ov = j == 0 ? Rational(1) : std::max(Rational(0), unit - circ) / unit;
        if (ov > best) {
          best = ov;
          adj.delta_star = delta;
        }
      }
      adj.overlap = best;
      const DyadicInterval probe(j, 1);
      const DyadicInterval composed = psi(out.sigma(phi(probe)));
      const std::int64_t n = std::int64_t{1} << j;
      std::int64_t diff = mod(composed.index() - shift_map(m, probe).index(), n);
      if (diff > n / 2) diff -= n;
      adj.composed_offset = diff;
      out.adjustments.push_back(adj);
    }
  }

  // Horizontal splits at each band's top level.
  for (std::size_t k = 1; k <= bands; ++k) {
    const int top = band_lo(k);
    const std::int64_t mstar = (anchor[k] >> (kMaxLevel - top));  // floor(a_k 2^top)
    out.splits.push_back(horizontal_split(top, mstar));
    if (out.splits.back().self_conflict) {
      out.notices.push_back("band " + std::to_string(k) + ": split at level " + std::to_string(top) +
                            " has a self-interacting offset");
    }
  }

  int max_classes = 0;
  for (const auto& s : out.splits) max_classes = std::max(max_classes, s.classes);

  out.ok = true;
  for (int r = 1; r <= 6; ++r) {
    for (int l = 1; l <= max_classes; ++l) {
      // Stage s of piece (r,l) holds G(r + 6s, l).
      std::vector<std::size_t> stage_bands;
      for (std::size_t k = static_cast<std::size_t>(r); k <= bands; k += 6) stage_bands.push_back(k);
      std::vector<std::vector<DyadicInterval>> entering(stage_bands.size());
      bool any = false;
      for (std::size_t s = 0; s < stage_bands.size(); ++s) {
        const std::size_t k = stage_bands[s];
        const SplitPlan& plan = out.splits[k - 1];
        for (int j = band_lo(k); j < band_hi(k); ++j) {
          for (std::int64_t idx = 1; idx <= (std::int64_t{1} << j); ++idx) {
            const DyadicInterval orig(j, idx);
            const DyadicInterval top = orig.ancestor(plan.level);
            if (plan.colour[static_cast<std::size_t>(top.index() - 1)] != l - 1) continue;
            entering[s].push_back(phi(orig));
            any = true;
          }
        }
      }
      if (!any) continue;

      TreePiece piece;
      piece.r = r;
      piece.l = l;
      std::vector<Member> members;
      for (std::size_t n = 0; n < stage_bands.size(); ++n) {
        const std::size_t k = stage_bands[n];
        const Tick thr = Tick{1} << (kMaxLevel + 1 - jprime(k));
        StageReport report;
        report.stage = static_cast<int>(n);
        report.band = k;
        report.entering = entering[n].size();
        report.threshold = Rational(2, std::int64_t{1} << jprime(k));

        std::vector<Member> fresh;
        for (const DyadicInterval& f : entering[n]) {
          const IntervalSet own(f);
          fresh.push_back({f, static_cast<int>(n), anchor[k], own, circle_translate(own, anchor[k])});
        }
        if (n > 0) {
          const Tick limit = (Tick{1} << (kMaxLevel + 1 - jprime(stage_bands[n - 1]))) / 4;
          for (const Member& f : fresh) {
            if (circular_diameter(f.a()) > limit) {
              ++report.diameter_violations;
              witness(report, "diam A(" + to_string(f.interval) + ") exceeds a quarter of the previous threshold");
            }
          }
          // Index sets K_{n+1}(I) and L_{n+1}(I) through a close-pair sweep.
          std::vector<Tagged> items;
          const std::size_t old_count = members.size();
          for (std::size_t i = 0; i < old_count; ++i) {
            push_pieces(items, members[i].b, 2 * i);
            push_pieces(items, members[i].c, 2 * i + 1);
          }
          std::vector<IntervalSet> fresh_a;
          for (std::size_t j = 0; j < fresh.size(); ++j) {
            fresh_a.push_back(fresh[j].a());
            push_pieces(items, fresh_a.back(), 2 * old_count + j);
          }
          std::vector<std::vector<std::size_t>> grow(2 * old_count);
          for (std::uint64_t key : close_groups(std::move(items), thr, true)) {
            const std::size_t g1 = key >> 32;
            const std::size_t g2 = key & 0xffffffffULL;
            if (g1 < 2 * old_count && g2 >= 2 * old_count) grow[g1].push_back(g2 - 2 * old_count);
          }
          for (std::size_t i = 0; i < old_count; ++i) {
            for (int side = 0; side < 2; ++side) {
              std::vector<Piece> pieces;
              IntervalSet& target = side == 0 ? members[i].b : members[i].c;
              pieces = target.pieces();
              for (std::size_t j : grow[2 * i + side]) {
                const auto& add = fresh_a[j].pieces();
                pieces.insert(pieces.end(), add.begin(), add.end());
              }
              if (!grow[2 * i + side].empty()) target = IntervalSet::from_pieces(std::move(pieces));
            }
          }
        }
        for (Member& f : fresh) members.push_back(std::move(f));
        check_stage(report, members, static_cast<int>(n), thr);
        piece.stages.push_back(std::move(report));
      }

      for (const Member& mem : members) {
        piece.family.insert(mem.interval);
        piece.sets.emplace(mem.interval, mem.a());
      }
      piece.certificate = verify_supporting_tree(out.sigma, piece.family, piece.sets);
      bool first = true;
      for (const auto& rec : piece.certificate.records) {
        piece.min_set_ratio = first ? rec.set_ratio : std::min(piece.min_set_ratio, rec.set_ratio);
        first = false;
        if (rec.own_ratio != Rational(1)) piece.certificate.verdict = false;  // I ⊆ A(I) must hold exactly
      }
      piece.ok = piece.certificate.verdict && piece.certificate.delta >= Rational(1, 2) &&
                 piece.certificate.c <= Rational(20, 3) && piece.min_set_ratio >= Rational(2);
      out.ok = out.ok && piece.ok;
      out.pieces.push_back(std::move(piece));
    }
  }
  return out;
}

}  // namespace rearr
