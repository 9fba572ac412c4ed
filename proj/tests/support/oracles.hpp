// Definition-level oracles shared by the unit and acceptance tests. They
// favour directness over speed.

#pragma once

#include <algorithm>
#include <climits>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "rearr/colour_game.hpp"

namespace oracle {

/// Testing intervals L that break hom1 or hom2, found by scanning every L of
/// level <= j and counting members one by one.
inline std::set<std::pair<rearr::DyadicInterval, std::string>> homogeneity_violations(
    const rearr::ColouredCollection& c) {
  std::set<std::pair<rearr::DyadicInterval, std::string>> out;
  const int j = c.level();
  const int d = c.colours();
  for (int l = 0; l <= j; ++l) {
    for (std::int64_t k = 1; k <= (std::int64_t{1} << l); ++k) {
      const rearr::DyadicInterval L(l, k);
      std::vector<std::int64_t> counts(static_cast<std::size_t>(d), 0);
      std::int64_t rho = 0;
      for (const auto& [index, colour] : c.members()) {
        if (!L.contains(rearr::DyadicInterval(j, index))) continue;
        ++rho;
        ++counts[static_cast<std::size_t>(colour - 1)];
      }
      const std::int64_t hi = *std::max_element(counts.begin(), counts.end());
      const std::int64_t lo = *std::min_element(counts.begin(), counts.end());
      if (rho <= d) {
        if (hi > 1) out.insert({L, "hom1"});
      } else if (c.eta().numerator() * hi > c.eta().denominator() * lo) {
        out.insert({L, "hom2"});
      }
    }
  }
  return out;
}

inline bool homogeneous(const rearr::ColouredCollection& c) { return homogeneity_violations(c).empty(); }

inline std::int64_t count_in(const rearr::IntervalCollection& s, const rearr::DyadicInterval& L) {
  std::int64_t n = 0;
  for (const auto& i : s) n += L.contains(i) ? 1 : 0;
  return n;
}

/// Number of (L, small, big) triples violating previsibility.
inline std::size_t previsibility_violations(const rearr::IntervalCollection& u, const rearr::IntervalCollection& c,
                                            int j, int d, bool symmetric) {
  rearr::IntervalCollection all = c;
  for (const auto& i : u) all.insert(i);
  std::size_t bad = 0;
  for (int l = 0; l < j; ++l) {
    for (std::int64_t k = 1; k <= (std::int64_t{1} << l); ++k) {
      const rearr::DyadicInterval L(l, k);
      const rearr::DyadicInterval left = L.left_child(), right = L.right_child();
      auto test = [&](const rearr::DyadicInterval& small, const rearr::DyadicInterval& big) {
        if (count_in(all, small) < d && count_in(all, big) >= d && count_in(u, big) > 0) ++bad;
      };
      test(left, right);
      if (symmetric) test(right, left);
    }
  }
  return bad;
}

struct RoundRobinSweep {
  std::uint64_t subsets = 0;   // number of subsets of D_j covered
  std::uint64_t failures = 0;  // subsets whose colouring is not (1/2, d)-homogeneous
};

/// Runs over every subset of D_j, colouring its Γ_1, Γ_2, ... by
/// ((l-1) mod d) + 1 and testing every L against hom1/hom2 with η = 1/2.
/// Cells are decided left to right. Paths that reach the same state (next
/// colour plus the colour counts of the still open testing intervals) have
/// identical futures, so they are merged with a multiplicity. Every subset
/// is still accounted for individually through that multiplicity.
inline RoundRobinSweep round_robin_sweep(int j, int d) {
  using Counts = std::vector<std::vector<std::int64_t>>;  // per level, per colour
  struct State {
    int next = 0;
    Counts open;
    bool operator<(const State& o) const { return std::tie(next, open) < std::tie(o.next, o.open); }
  };
  auto ok = [d](const std::vector<std::int64_t>& counts) {
    std::int64_t rho = 0, hi = 0, lo = INT64_MAX;
    for (std::int64_t x : counts) {
      rho += x;
      hi = std::max(hi, x);
      lo = std::min(lo, x);
    }
    return rho <= d ? hi <= 1 : hi <= 2 * lo;
  };
  const Counts empty(static_cast<std::size_t>(j + 1), std::vector<std::int64_t>(static_cast<std::size_t>(d), 0));
  std::map<State, std::uint64_t> states{{State{0, empty}, 1}};
  RoundRobinSweep out;
  const std::int64_t cells = std::int64_t{1} << j;
  for (std::int64_t t = 0; t < cells; ++t) {
    std::map<State, std::uint64_t> next;
    for (const auto& [state, paths] : states) {
      for (int take = 0; take < 2; ++take) {
        State s = state;
        if (take) {
          for (int l = 0; l <= j; ++l) ++s.open[static_cast<std::size_t>(l)][static_cast<std::size_t>(s.next)];
          s.next = (s.next + 1) % d;
        }
        bool good = true;
        for (int l = 0; l <= j; ++l) {
          if ((t + 1) % (std::int64_t{1} << (j - l)) != 0) continue;  // L at level l still open
          good = good && ok(s.open[static_cast<std::size_t>(l)]);
          std::fill(s.open[static_cast<std::size_t>(l)].begin(), s.open[static_cast<std::size_t>(l)].end(), 0);
        }
        if (good) {
          next[s] += paths;
        } else {
          out.failures += paths << (cells - t - 1);  // every completion fails too
        }
      }
    }
    states = std::move(next);
  }
  for (const auto& [state, paths] : states) out.subsets += paths;
  out.subsets += out.failures;
  return out;
}

}  // namespace oracle
