#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rearr/shift.hpp"
#include "support/generators.hpp"

using namespace rearr;

namespace {

/// N_j from the definition: level-j cells hit by x_l = m_l / 2^l, j <= l <= J.
std::int64_t nj_oracle(const std::vector<std::int64_t>& m, int j, int J) {
  std::set<std::int64_t> cells;
  for (int l = j; l <= J; ++l) {
    const std::int64_t n = std::int64_t{1} << l;
    const Rational x(((m[static_cast<std::size_t>(l - 1)] % n) + n) % n, n);
    const Rational scaled = x * Rational(std::int64_t{1} << j);
    cells.insert(scaled.numerator() / scaled.denominator());
  }
  return static_cast<std::int64_t>(cells.size());
}

/// |τ_M(Q(I))*| / |I| by marking covered cells of level J.
Rational semenov_oracle(const std::vector<std::int64_t>& m, const DyadicInterval& interval, int J) {
  std::vector<bool> covered(std::size_t{1} << J, false);
  for (int l = interval.level(); l <= J; ++l) {
    const std::int64_t n = std::int64_t{1} << l;
    const std::int64_t shift = l == 0 ? 0 : m[static_cast<std::size_t>(l - 1)];
    const int down = l - interval.level();
    for (std::int64_t k = (interval.index() - 1) << down; k < interval.index() << down; ++k) {
      const std::int64_t image = (((k + shift) % n) + n) % n;
      for (std::int64_t c = image << (J - l); c < (image + 1) << (J - l); ++c) covered[static_cast<std::size_t>(c)] = true;
    }
  }
  const auto count = std::count(covered.begin(), covered.end(), true);
  return Rational(count, std::int64_t{1} << (J - interval.level()));
}

}  // namespace

TEST_CASE("shift_map examples") {
  const ShiftSequence m({1, 1});
  CHECK(shift_map(m, DyadicInterval(1, 2)) == DyadicInterval(1, 1));
  CHECK(shift_map(m, DyadicInterval(2, 1)) == DyadicInterval(2, 2));
  CHECK(shift_map(ShiftSequence::zeros(3), DyadicInterval(3, 5)) == DyadicInterval(3, 5));
  CHECK_THROWS_AS(shift_map(m, DyadicInterval(3, 1)), DomainError);
  CHECK_THROWS_AS(ShiftSequence({3}), DomainError);
  CHECK(ShiftSequence({-2, -1}).reduced(2) == 3);
}

TEST_CASE("shift_map is a bijection on every level") {
  gen::Rng rng(1);
  for (int t = 0; t < 20; ++t) {
    const ShiftSequence m = gen::shift(rng, 8);
    for (int j = 1; j <= 8; ++j) {
      std::set<std::int64_t> images;
      for (std::int64_t k = 1; k <= (std::int64_t{1} << j); ++k) images.insert(shift_map(m, DyadicInterval(j, k)).index());
      CHECK(images.size() == (std::size_t{1} << j));
    }
  }
}

TEST_CASE("N_j agrees with the definition on every sequence of depth 4") {
  std::vector<std::int64_t> m(4);
  std::size_t cases = 0;
  for (m[0] = 0; m[0] < 2; ++m[0]) {
    for (m[1] = 0; m[1] < 4; ++m[1]) {
      for (m[2] = 0; m[2] < 8; ++m[2]) {
        for (m[3] = 0; m[3] < 16; ++m[3]) {
          const ShiftSequence s(m);
          for (int j = 0; j <= 4; ++j) CHECK(compute_nj(s, j, 4) == nj_oracle(m, j, 4));
          ++cases;
        }
      }
    }
  }
  CHECK(cases == 1024);
}

TEST_CASE("N_j examples") {
  const int J = 10;
  const auto zeros = all_nj(ShiftSequence::zeros(J), J);
  CHECK(std::all_of(zeros.begin(), zeros.end(), [](std::int64_t n) { return n == 1; }));

  const ShiftSequence ones(std::vector<std::int64_t>(J, 1));
  for (int j = 1; j < J; ++j) CHECK(compute_nj(ones, j, J) == 2);
  CHECK(compute_nj(ones, J, J) == 1);

  // m_j = 2^(j-1): every x_l equals 1/2, so one cell is occupied.
  std::vector<std::int64_t> half;
  for (int j = 1; j <= J; ++j) half.push_back(std::int64_t{1} << (j - 1));
  for (int j = 1; j <= J; ++j) CHECK(compute_nj(ShiftSequence(half), j, J) == 1);
}

TEST_CASE("N_j = 1 forces x_l < 2^-j on the whole tail") {
  gen::Rng rng(2);
  for (int t = 0; t < 200; ++t) {
    const ShiftSequence m = gen::clustered_shift(rng, 10);
    for (int j = 1; j <= 10; ++j) {
      if (compute_nj(m, j, 10) != 1) continue;
      // The single occupied cell is the one holding x_j itself.
      const std::int64_t cell = m.reduced(j);
      for (int l = j; l <= 10; ++l) CHECK((m.reduced(l) >> (l - j)) == cell);
    }
  }
}

TEST_CASE("Semenov ratio agrees with a bitmap oracle") {
  gen::Rng rng(4);
  for (int t = 0; t < 30; ++t) {
    const ShiftSequence m = gen::shift(rng, 6);
    const Rearrangement tau = m.rearrangement();
    for (int j = 0; j <= 6; ++j) {
      for (std::int64_t k = 1; k <= (std::int64_t{1} << j); ++k) {
        const DyadicInterval i(j, k);
        CHECK(semenov_ratio(tau, i, 6) == semenov_oracle(m.values(), i, 6));
      }
    }
  }
}

TEST_CASE("Semenov constant examples") {
  const SemenovReport id = semenov_constant(Rearrangement::identity(6), 6);
  CHECK(id.constant == Rational(1));

  // One shifted level moves one image block: constant at most 2.
  for (int level = 1; level <= 6; ++level) {
    std::vector<std::int64_t> m(6, 0);
    m[static_cast<std::size_t>(level - 1)] = 1;
    const SemenovReport r = semenov_constant(ShiftSequence(m).rearrangement(), 6);
    CHECK(r.constant <= Rational(2));
    CHECK(r.constant > Rational(1));
  }
}

TEST_CASE("sandwich N_j/2 <= |τ(Q(I))*|/|I| <= 2 N_j on random shifts") {
  gen::Rng rng(9);
  for (int t = 0; t < 20; ++t) {
    const ShiftSequence m = t % 2 ? gen::shift(rng, 8) : gen::clustered_shift(rng, 8);
    const Rearrangement tau = m.rearrangement();
    for (int j = 0; j <= 8; ++j) {
      const Rational n(compute_nj(m, j, 8));
      for (std::int64_t k = 1; k <= (std::int64_t{1} << j); ++k) {
        const Rational r = semenov_ratio(tau, DyadicInterval(j, k), 8);
        CHECK(n / 2 <= r);
        CHECK(r <= 2 * n);
      }
    }
  }
}

TEST_CASE("decomposition of the zero sequence is trivial") {
  const DecompositionResult r = extract_decomposition(ShiftSequence::zeros(10), 10);
  CHECK(r.applicable);
  CHECK(r.decomposition.a.empty());
  CHECK(is_decomposable(ShiftSequence::zeros(10), r.decomposition).ok);
}

TEST_CASE("decomposition with isolated ones at levels 3, 8 and 15") {
  std::vector<std::int64_t> m(16, 0);
  for (int l : {3, 8, 15}) m[static_cast<std::size_t>(l - 1)] = 1;
  const ShiftSequence s(m);
  const DecompositionResult r = extract_decomposition(s, 16);
  REQUIRE(r.applicable);
  // N_j = 2 exactly at j = 3, 8, 15, where x_j = 2^-j sits in the second cell.
  CHECK(r.decomposition.jk == std::vector<int>{3, 8, 15, 17});
  CHECK(r.decomposition.a == std::vector<Rational>{Rational(1, 8), Rational(1, 256), Rational(1, 32768)});
  CHECK(is_decomposable(s, r.decomposition).ok);
}

TEST_CASE("three accumulation points make the extraction inapplicable") {
  std::vector<std::int64_t> m;
  const int J = 16;
  for (int j = 1; j <= J; ++j) {
    const double t = (j % 3) / 3.0;
    m.push_back(static_cast<std::int64_t>(std::floor(t * static_cast<double>(std::int64_t{1} << j))));
  }
  const ShiftSequence s(m);
  const DecompositionResult r = extract_decomposition(s, J);
  CHECK_FALSE(r.applicable);
  REQUIRE(r.offending_level.has_value());
  CHECK(compute_nj(s, *r.offending_level, J) >= 3);
}

TEST_CASE("extracted decompositions always pass the checker") {
  gen::Rng rng(12);
  int applicable = 0;
  for (int t = 0; t < 300; ++t) {
    const ShiftSequence m = t % 3 == 0 ? gen::decomposable(rng, 12).m : gen::clustered_shift(rng, 12);
    const DecompositionResult r = extract_decomposition(m, 12);
    if (!r.applicable) continue;
    ++applicable;
    CHECK(is_decomposable(m, r.decomposition).ok);
  }
  CHECK(applicable >= 30);
}

TEST_CASE("generated decomposable samples satisfy their witness") {
  gen::Rng rng(13);
  for (int t = 0; t < 200; ++t) {
    const auto sample = gen::decomposable(rng, 14);
    CHECK(is_decomposable(sample.m, sample.d).ok);
  }
}

TEST_CASE("is_decomposable lists violating levels") {
  // x_j = 1/4 on levels 3..8 with a_1 = 1/2: neither disjunct holds.
  std::vector<std::int64_t> m(8, 0);
  for (int j = 3; j <= 8; ++j) m[static_cast<std::size_t>(j - 1)] = std::int64_t{1} << (j - 2);
  Decomposition d;
  d.a = {Rational(1, 2)};
  d.jk = {3, 9};
  const DecomposabilityReport r = is_decomposable(ShiftSequence(m), d);
  CHECK_FALSE(r.ok);
  CHECK(r.violations.size() == 6);
  CHECK(r.violations.front().level == 3);

  d.a = {Rational(1, 4)};
  CHECK(is_decomposable(ShiftSequence(m), d).ok);

  Decomposition any;
  any.a = {Rational(3, 8)};
  any.jk = {1, 9};
  CHECK(is_decomposable(ShiftSequence::zeros(8), any).ok);
}

TEST_CASE("level selection") {
  const ShiftSequence ones(std::vector<std::int64_t>(12, 1));
  const LevelSelection s = select_levels(ones, 12);
  CHECK(s.ok);
  REQUIRE_FALSE(s.levels.empty());
  CHECK(s.levels.front() == 1);
  for (int j : s.levels) CHECK(s.nj[static_cast<std::size_t>(j)] == (j < 12 ? 2 : 1));

  CHECK_FALSE(select_levels(ShiftSequence::zeros(8), 8).ok);

  std::vector<std::int64_t> even(12, 0);
  for (int j = 2; j <= 12; j += 2) even[static_cast<std::size_t>(j - 1)] = 1;
  const LevelSelection e = select_levels(ShiftSequence(even), 12);
  CHECK(e.ok);
  for (int j : e.levels) CHECK(j % 2 == 0);
}
