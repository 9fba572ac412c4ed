// Hand-rolled random generators for the property tests.

#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "rearr/colour_game.hpp"
#include "rearr/dyadic.hpp"
#include "rearr/shift.hpp"

namespace gen {

using Rng = std::mt19937_64;

inline std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

/// m_j uniform in [-2^j, 2^j].
inline rearr::ShiftSequence shift(Rng& rng, int depth) {
  std::vector<std::int64_t> m;
  for (int j = 1; j <= depth; ++j) m.push_back(uniform(rng, -(std::int64_t{1} << j), std::int64_t{1} << j));
  return rearr::ShiftSequence(std::move(m));
}

/// Shifts whose x_j mostly stay close to a few dyadic points, so that the
/// occupation counts take small and large values alike.
inline rearr::ShiftSequence clustered_shift(Rng& rng, int depth) {
  const std::int64_t anchor = uniform(rng, 0, 15);  // x ≈ anchor / 16
  std::vector<std::int64_t> m;
  for (int j = 1; j <= depth; ++j) {
    const std::int64_t n = std::int64_t{1} << j;
    std::int64_t v = j >= 4 ? anchor << (j - 4) : 0;
    v += uniform(rng, -2, 2);
    if (coin(rng, 0.2)) v = uniform(rng, 0, n - 1);
    v = ((v % n) + n) % n;
    m.push_back(v);
  }
  return rearr::ShiftSequence(std::move(m));
}

struct DecomposableSample {
  rearr::ShiftSequence m;
  rearr::Decomposition d;
};

/// Bands [j_{k-1}, j_k) with anchors a_k = c 2^-j_{k-1}, c in {1, 2},
/// a_k <= 1/2. On a band level x_j is a_k, 0 or 2^-j. Levels before j_0 are 0.
inline DecomposableSample decomposable(Rng& rng, int depth) {
  rearr::Decomposition d;
  d.depth = depth;
  int j = static_cast<int>(uniform(rng, 1, std::max(1, depth / 3)));
  std::vector<std::int64_t> m(static_cast<std::size_t>(depth), 0);
  d.jk.push_back(j);
  while (j <= depth) {
    const int top = j;
    const std::int64_t c = top == 1 ? 1 : uniform(rng, 1, 2);
    const rearr::Rational a(c, std::int64_t{1} << top);
    const int length = static_cast<int>(uniform(rng, 2, 5));
    const int end = std::min(top + length, depth + 1);
    for (int l = top; l < end; ++l) {
      const std::int64_t choice = uniform(rng, 0, 5);
      std::int64_t v = (c << (l - top));  // a_k 2^l
      if (choice == 4) v = 0;
      if (choice == 5) v = 1;
      m[static_cast<std::size_t>(l - 1)] = v;
    }
    d.a.push_back(a);
    d.jk.push_back(end);
    j = end;
  }
  return {rearr::ShiftSequence(std::move(m)), d};
}

/// A random subset of D_j of the given density.
inline rearr::IntervalCollection subset(Rng& rng, int level, double density) {
  rearr::IntervalCollection out;
  for (std::int64_t k = 1; k <= (std::int64_t{1} << level); ++k) {
    if (coin(rng, density)) out.insert(rearr::DyadicInterval(level, k));
  }
  return out;
}

/// Homogeneous colouring grown cell by cell: each new cell receives a
/// uniformly chosen colour among those that keep the colouring homogeneous.
/// Cells for which no colour works are skipped.
inline rearr::ColouredCollection homogeneous(Rng& rng, int level, int d, rearr::Rational eta, double density) {
  rearr::ColouredCollection c(level, d, eta);
  std::vector<std::int64_t> cells;
  for (std::int64_t k = 1; k <= (std::int64_t{1} << level); ++k) {
    if (coin(rng, density)) cells.push_back(k);
  }
  std::shuffle(cells.begin(), cells.end(), rng);
  for (std::int64_t k : cells) {
    const rearr::DyadicInterval cell(level, k);
    const auto r = rearr::brute_force_extensions(c, rearr::IntervalCollection{cell});
    if (r.count == 0) continue;
    const auto pick = static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(r.count) - 1));
    c.insert(cell, r.extensions[pick].front());
  }
  return c;
}

/// Grows a (symmetrically) previsible U: propose whole uncoloured blocks
/// inside random testing intervals, or single cells, and keep a proposal
/// only if the enlarged U is still previsible.
inline rearr::IntervalCollection previsible(Rng& rng, const rearr::ColouredCollection& c, int attempts) {
  const int j = c.level();
  const rearr::IntervalCollection members = c.collection();
  rearr::IntervalCollection u;
  for (int t = 0; t < attempts; ++t) {
    const int nu = static_cast<int>(uniform(rng, 0, j));
    const rearr::DyadicInterval block(nu, uniform(rng, 1, std::int64_t{1} << nu));
    rearr::IntervalCollection candidate = u;
    const int shift = j - nu;
    const bool single = coin(rng, 0.3);
    const std::int64_t first = ((block.index() - 1) << shift) + 1;
    const std::int64_t last = block.index() << shift;
    std::int64_t added = 0;
    for (std::int64_t k = first; k <= last; ++k) {
      const rearr::DyadicInterval cell(j, single ? uniform(rng, first, last) : k);
      if (members.contains(cell) || candidate.contains(cell)) continue;
      candidate.insert(cell);
      ++added;
      if (single) break;
    }
    if (added == 0) continue;
    if (rearr::check_previsible(candidate, members, j, c.colours()).ok) u = candidate;
  }
  return u;
}

/// Uniformly random permutation of every level up to depth.
inline rearr::Rearrangement permutation(Rng& rng, int depth) {
  std::vector<std::vector<std::int64_t>> tables;
  for (int l = 0; l <= depth; ++l) {
    std::vector<std::int64_t> t(std::size_t{1} << l);
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = static_cast<std::int64_t>(i);
    std::shuffle(t.begin(), t.end(), rng);
    tables.push_back(std::move(t));
  }
  return rearr::Rearrangement::from_tables(std::move(tables));
}

}  // namespace gen
