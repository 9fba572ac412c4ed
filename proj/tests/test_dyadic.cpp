#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rearr/dyadic.hpp"
#include "support/generators.hpp"

using namespace rearr;

TEST_CASE("dyadic intervals have exact endpoints") {
  const DyadicInterval i(3, 5);
  CHECK(Rational(i.lo(), kUnit) == Rational(1, 2));
  CHECK(Rational(i.hi(), kUnit) == Rational(5, 8));
  CHECK(i.measure() == Rational(1, 8));
  CHECK(i.parent() == DyadicInterval(2, 3));
  CHECK(i.left_child() == DyadicInterval(4, 9));
  CHECK(i.right_child() == DyadicInterval(4, 10));
  CHECK(i.ancestor(0) == DyadicInterval(0, 1));
  CHECK(to_string(i) == "I(3,5)");
}

TEST_CASE("invalid intervals are rejected") {
  CHECK_THROWS_AS(DyadicInterval(2, 0), DomainError);
  CHECK_THROWS_AS(DyadicInterval(2, 5), DomainError);
  CHECK_THROWS_AS(DyadicInterval(-1, 1), DomainError);
  CHECK_THROWS_AS(DyadicInterval(31, 1), DomainError);
  CHECK_THROWS_AS(DyadicInterval(2, 1).ancestor(3), DomainError);
}

TEST_CASE("translation wraps around the circle") {
  CHECK(DyadicInterval(2, 4).translated(1) == DyadicInterval(2, 1));
  CHECK(DyadicInterval(2, 1).translated(-1) == DyadicInterval(2, 4));
  CHECK(DyadicInterval(3, 2).translated(17) == DyadicInterval(3, 3));
}

TEST_CASE("containment matches the endpoint definition") {
  gen::Rng rng(11);
  for (int t = 0; t < 2000; ++t) {
    const int l1 = static_cast<int>(gen::uniform(rng, 0, 8));
    const int l2 = static_cast<int>(gen::uniform(rng, 0, 8));
    const DyadicInterval a(l1, gen::uniform(rng, 1, std::int64_t{1} << l1));
    const DyadicInterval b(l2, gen::uniform(rng, 1, std::int64_t{1} << l2));
    const bool oracle = a.lo() <= b.lo() && b.hi() <= a.hi();
    CHECK(a.contains(b) == oracle);
    // Two dyadic intervals either nest or are disjoint.
    const bool disjoint = a.hi() <= b.lo() || b.hi() <= a.lo();
    CHECK(a.intersects(b) == !disjoint);
  }
}

TEST_CASE("interval sets are canonical unions") {
  const IntervalSet s = IntervalSet::from_pieces({{0, 4}, {2, 6}, {6, 8}, {10, 12}});
  REQUIRE(s.pieces().size() == 2);
  CHECK(s.pieces()[0] == IntervalSet::Piece{0, 8});
  CHECK(s.measure_ticks() == 10);
  CHECK(s.contains(IntervalSet(1, 7)));
  CHECK_FALSE(s.contains(IntervalSet(7, 11)));
  CHECK(s.intersect(IntervalSet(5, 11)).measure_ticks() == 4);
  CHECK(s.distance(IntervalSet(14, 20)).value() == 2);
  CHECK(IntervalSet(0, 4).distance(IntervalSet(4, 8)).value() == 0);
  CHECK_FALSE(IntervalSet().distance(s).has_value());
}

TEST_CASE("interval set algebra agrees with a bitmap oracle") {
  gen::Rng rng(7);
  const Tick n = 64;
  auto random_set = [&]() {
    std::vector<IntervalSet::Piece> pieces;
    const int count = static_cast<int>(gen::uniform(rng, 0, 4));
    for (int i = 0; i < count; ++i) {
      const Tick lo = gen::uniform(rng, 0, n - 1);
      pieces.push_back({lo, gen::uniform(rng, lo + 1, n)});
    }
    return IntervalSet::from_pieces(pieces);
  };
  auto bitmap = [&](const IntervalSet& s) {
    std::vector<bool> bits(static_cast<std::size_t>(n), false);
    for (const auto& p : s.pieces()) {
      for (Tick x = p.lo; x < p.hi; ++x) bits[static_cast<std::size_t>(x)] = true;
    }
    return bits;
  };
  for (int t = 0; t < 500; ++t) {
    const IntervalSet a = random_set();
    const IntervalSet b = random_set();
    const auto ba = bitmap(a), bb = bitmap(b);
    std::vector<bool> u(ba.size()), in(ba.size());
    bool contains = true, meets = false;
    for (std::size_t i = 0; i < ba.size(); ++i) {
      u[i] = ba[i] || bb[i];
      in[i] = ba[i] && bb[i];
      if (bb[i] && !ba[i]) contains = false;
      if (in[i]) meets = true;
    }
    CHECK(bitmap(a.unite(b)) == u);
    CHECK(bitmap(a.intersect(b)) == in);
    CHECK(a.contains(b) == contains);
    CHECK(a.intersects(b) == meets);
  }
}

TEST_CASE("wrapping maps a translated set onto the unit circle") {
  const IntervalSet s(kUnit - 4, kUnit + 4);
  const IntervalSet w = s.wrapped();
  CHECK(w.measure_ticks() == 8);
  CHECK(w.contains(IntervalSet(0, 4)));
  CHECK(w.contains(IntervalSet(kUnit - 4, kUnit)));
  CHECK(IntervalSet(0, 4).circular_distance(IntervalSet(kUnit - 8, kUnit - 6)).value() == 6);
}

TEST_CASE("Q(I) and pointset measure") {
  const IntervalCollection q = q_collection(DyadicInterval(1, 2), 3);
  CHECK(q.size() == 1 + 2 + 4);
  CHECK(pointset_measure(q) == Rational(1, 2));
  IntervalCollection scattered{DyadicInterval(2, 1), DyadicInterval(3, 2), DyadicInterval(3, 8)};
  CHECK(pointset_measure(scattered) == Rational(3, 8));
  CHECK(scattered.max_level() == 3);
  CHECK(scattered.on_level(3).size() == 2);
}

TEST_CASE("rearrangements are level-preserving bijections with inverses") {
  gen::Rng rng(3);
  const Rearrangement shifts = Rearrangement::shifts({0, 1, 3, -2});
  CHECK(shifts(DyadicInterval(2, 2)) == DyadicInterval(2, 1));
  CHECK(shifts(DyadicInterval(3, 1)) == DyadicInterval(3, 7));
  const Rearrangement tables = gen::permutation(rng, 5);
  const Rearrangement inv = tables.inverse();
  for (int l = 0; l <= 5; ++l) {
    std::set<std::int64_t> images;
    for (std::int64_t k = 1; k <= (std::int64_t{1} << l); ++k) {
      const DyadicInterval i(l, k);
      CHECK(inv(tables(i)) == i);
      CHECK(tables(i).level() == l);
      images.insert(tables(i).index());
    }
    CHECK(images.size() == (std::size_t{1} << l));
  }
  for (int l = 0; l <= 3; ++l) {
    for (std::int64_t k = 1; k <= (std::int64_t{1} << l); ++k) {
      CHECK(shifts.inverse()(shifts(DyadicInterval(l, k))) == DyadicInterval(l, k));
    }
  }
  CHECK_THROWS_AS(Rearrangement::from_tables({{0}, {0, 0}}), DomainError);
  CHECK_THROWS_AS(Rearrangement::identity(2)(DyadicInterval(3, 1)), DomainError);
}

TEST_CASE("nestedness violations agree with pairwise checking") {
  gen::Rng rng(5);
  for (int t = 0; t < 200; ++t) {
    NestedFamily family;
    const int size = static_cast<int>(gen::uniform(rng, 1, 8));
    for (int i = 0; i < size; ++i) {
      const DyadicInterval key(4, i + 1);
      std::vector<IntervalSet::Piece> pieces;
      for (int p = 0; p < 2; ++p) {
        const int l = static_cast<int>(gen::uniform(rng, 1, 4));
        const DyadicInterval cell(l, gen::uniform(rng, 1, std::int64_t{1} << l));
        pieces.push_back({cell.lo(), cell.hi()});
      }
      family.emplace(key, IntervalSet::from_pieces(pieces));
    }
    std::size_t oracle = 0;
    for (auto a = family.begin(); a != family.end(); ++a) {
      for (auto b = std::next(a); b != family.end(); ++b) {
        if (a->second.intersects(b->second) && !a->second.contains(b->second) && !b->second.contains(a->second)) {
          ++oracle;
        }
      }
    }
    CHECK(nestedness_violations(family, 1000).size() == oracle);
  }
}

TEST_CASE("supporting tree certificate for the identity with A(I) = I") {
  const Rearrangement id = Rearrangement::identity(3);
  IntervalCollection family;
  NestedFamily sets;
  for (int l = 0; l <= 3; ++l) {
    for (std::int64_t k = 1; k <= (std::int64_t{1} << l); ++k) {
      family.insert(DyadicInterval(l, k));
      sets.emplace(DyadicInterval(l, k), IntervalSet(DyadicInterval(l, k)));
    }
  }
  const SupportCertificate cert = verify_supporting_tree(id, family, sets);
  CHECK(cert.verdict);
  CHECK(cert.c == Rational(1));
  CHECK(cert.delta == Rational(1));
  CHECK(cert.records.size() == family.size());

  // A shift by one cell breaks the image condition for A(I) = I.
  const SupportCertificate shifted = verify_supporting_tree(Rearrangement::figiel(1, 3), family, sets);
  CHECK(shifted.delta == Rational(0));
  CHECK_FALSE(shifted.verdict);

  family.insert(DyadicInterval(4, 1));
  CHECK_THROWS_AS(verify_supporting_tree(id, family, sets), IncompleteFamilyError);
}

TEST_CASE("non-nested families are reported") {
  NestedFamily sets;
  sets.emplace(DyadicInterval(1, 1), IntervalSet(0, kUnit / 2));
  sets.emplace(DyadicInterval(1, 2), IntervalSet(kUnit / 4, 3 * kUnit / 4));
  IntervalCollection family{DyadicInterval(1, 1), DyadicInterval(1, 2)};
  const SupportCertificate cert = verify_supporting_tree(Rearrangement::identity(1), family, sets);
  CHECK_FALSE(cert.nested);
  CHECK_FALSE(cert.verdict);
  REQUIRE(cert.violations.size() == 1);
}

TEST_CASE("dyadic trees of sets") {
  NestedFamily sets;
  sets.emplace(DyadicInterval(0, 1), IntervalSet(0, kUnit));
  sets.emplace(DyadicInterval(1, 1), IntervalSet(0, kUnit / 4));
  sets.emplace(DyadicInterval(1, 2), IntervalSet(kUnit / 2, kUnit));
  const DyadicTreeReport ok = check_dyadic_tree(sets);
  CHECK(ok.ok);
  CHECK(ok.c == Rational(2));

  sets[DyadicInterval(1, 1)] = IntervalSet(0, 3 * kUnit / 4);
  const DyadicTreeReport bad = check_dyadic_tree(sets);
  CHECK_FALSE(bad.ok);
}
