#include <gtest/gtest.h>

#include "test_util.hpp"
#include "wed/oracle.hpp"

using namespace wed;
using namespace wed::testing;

TEST(Cost, InfinityAbsorbs) {
  EXPECT_EQ(cadd(kInf, 5), kInf);
  EXPECT_EQ(cadd(3, kInf), kInf);
  EXPECT_EQ(cadd(kInf - 1, kInf - 1), kInf);
  EXPECT_EQ(cadd(2, 3), 5);
  EXPECT_TRUE(is_inf(kInf));
}

TEST(WeightFn, UnitIsNormalized) {
  EXPECT_TRUE(normalize_check(WeightFn::unit(5)).normalized);
  EXPECT_TRUE(WeightFn::unit(3).symmetric());
}

TEST(WeightFn, HalfCostIsAViolation) {
  WeightFn w = WeightFn::unit(2);
  WeightFn h(2, 2);
  for (int a = 0; a <= 2; ++a)
    for (int b = 0; b <= 2; ++b) h.set(a, b, 2 * w(a, b));
  h.set(0, 1, 1);
  const auto r = normalize_check(h);
  EXPECT_FALSE(r.normalized);
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_EQ(r.violations[0], std::make_pair(std::size_t{0}, std::size_t{1}));
}

TEST(WeightFn, RejectsBadDenominator) { EXPECT_THROW(WeightFn(2, 0), std::invalid_argument); }

TEST(WeightFn, UnitConversions) {
  WeightFn w(2, 7);
  EXPECT_EQ(w.units(3), 21);
  EXPECT_EQ(w.floor_units(20), 2);
  EXPECT_EQ(w.ceil_units(15), 3);
  EXPECT_EQ(w.ceil_units(14), 2);
}

TEST(Alignment, IdentityCostsNothing) {
  Rng rng(1);
  const SymbolString X = random_string(rng, 20, 3);
  const Alignment a{{{0, 0}, {20, 20}}};
  EXPECT_EQ(alignment_cost(X, X, a, random_weights(rng, 3, 4)), 0);
}

TEST(Alignment, SingleDeletion) {
  const SymbolString X{0, 1}, Y{1};
  const Alignment a{{{0, 0}, {1, 0}, {2, 1}}};
  EXPECT_EQ(alignment_cost(X, Y, a, WeightFn::unit(2)), 1);
}

TEST(Alignment, ExpandMatchedRun) {
  const auto pts = expand_breakpoints(Alignment{{{0, 0}, {3, 3}}});
  EXPECT_EQ(pts, (std::vector<Point>{{0, 0}, {1, 1}, {2, 2}, {3, 3}}));
  EXPECT_EQ(expand_breakpoints(Alignment{{{0, 0}, {1, 0}}}), (std::vector<Point>{{0, 0}, {1, 0}}));
}

TEST(Alignment, MalformedIsRejected) {
  EXPECT_THROW(expand_breakpoints(Alignment{}), AlignmentError);
  EXPECT_THROW(expand_breakpoints(Alignment{{{0, 0}, {0, 0}}}), AlignmentError);
  EXPECT_THROW(expand_breakpoints(Alignment{{{2, 2}, {1, 3}}}), AlignmentError);
  EXPECT_THROW(expand_breakpoints(Alignment{{{0, 0}, {3, 1}}}), AlignmentError);
}

TEST(Alignment, RandomExpansionsAreStaircases) {
  Rng rng(2);
  for (int it = 0; it < 300; ++it) {
    const SymbolString X = random_string(rng, uniform(rng, 0, 30), 3);
    const SymbolString Y = mutate(rng, X, uniform(rng, 0, 6), 3);
    const auto r = wed_quadratic(X, Y, WeightFn::unit(3));
    const auto pts = expand_breakpoints(*r.alignment);
    EXPECT_EQ(pts.front(), (Point{0, 0}));
    EXPECT_EQ(pts.back(), (Point{static_cast<std::int64_t>(X.size()), static_cast<std::int64_t>(Y.size())}));
    for (std::size_t t = 1; t < pts.size(); ++t) {
      const auto dx = pts[t].x - pts[t - 1].x, dy = pts[t].y - pts[t - 1].y;
      EXPECT_TRUE((dx == 1 && dy == 0) || (dx == 0 && dy == 1) || (dx == 1 && dy == 1));
    }
  }
}

TEST(Alignment, UnitCostCountsEdits) {
  Rng rng(3);
  for (int it = 0; it < 300; ++it) {
    const SymbolString X = random_string(rng, uniform(rng, 0, 25), 4);
    const SymbolString Y = mutate(rng, X, uniform(rng, 0, 5), 4);
    const auto r = wed_quadratic(X, Y, WeightFn::unit(4));
    EXPECT_EQ(alignment_unit_cost(X, Y, *r.alignment), r.cost);
    EXPECT_EQ(alignment_cost(X, Y, *r.alignment, WeightFn::unit(4)), r.cost);
  }
}

TEST(Alignment, WeightedCostDominatesUnitCost) {
  Rng rng(4);
  for (int it = 0; it < 300; ++it) {
    const SymbolString X = random_string(rng, uniform(rng, 0, 25), 3);
    const SymbolString Y = mutate(rng, X, uniform(rng, 0, 5), 3);
    const WeightFn w = random_weights(rng, 3, uniform(rng, 1, 8));
    const auto r = wed_quadratic(X, Y, w);
    EXPECT_GE(r.cost, w.units(alignment_unit_cost(X, Y, *r.alignment)));
  }
}

TEST(Alignment, CigarRoundTrip) {
  Rng rng(5);
  for (int it = 0; it < 200; ++it) {
    const SymbolString X = random_string(rng, uniform(rng, 0, 25), 3);
    const SymbolString Y = mutate(rng, X, uniform(rng, 0, 5), 3);
    const Alignment a = *wed_quadratic(X, Y, WeightFn::unit(3)).alignment;
    const Alignment b = from_ops(parse_cigar(to_cigar(X, Y, a)), {0, 0}, X, Y);
    EXPECT_EQ(b.bp, a.bp);
  }
  EXPECT_THROW(parse_cigar("3Q"), AlignmentError);
  EXPECT_THROW(parse_cigar("="), AlignmentError);
  EXPECT_THROW(parse_cigar("12"), AlignmentError);
}

TEST(Alignment, CanonicalDropsInteriorMatches) {
  const SymbolString X{0, 1, 2}, Y{0, 1, 2};
  const Alignment a{{{0, 0}, {1, 1}, {2, 2}, {3, 3}}};
  EXPECT_EQ(canonical(X, Y, a).bp, (std::vector<Point>{{0, 0}, {3, 3}}));
}

TEST(Alignment, ConcatRequiresMeetingEnds) {
  const Alignment a{{{0, 0}, {1, 1}}}, b{{{1, 1}, {2, 1}}}, c{{{2, 2}, {3, 3}}};
  EXPECT_EQ(concat(a, b).bp, (std::vector<Point>{{0, 0}, {1, 1}, {2, 1}}));
  EXPECT_THROW(concat(a, c), AlignmentError);
}

TEST(Compose, IdentityOnRight) {
  Rng rng(6);
  for (int it = 0; it < 100; ++it) {
    const SymbolString X = random_string(rng, uniform(rng, 0, 15), 3);
    const SymbolString Y = mutate(rng, X, uniform(rng, 0, 4), 3);
    const Alignment A = *wed_quadratic(X, Y, WeightFn::unit(3)).alignment;
    const std::int64_t m = Y.size();
    const Alignment id = m ? Alignment{{{0, 0}, {m, m}}} : Alignment{{{0, 0}}};
    EXPECT_EQ(compose_alignments(X, Y, Y, A, id).bp, A.bp);
  }
}

TEST(Compose, DeleteThenInsert) {
  const SymbolString X{0, 1}, Y{1}, Z{1, 2};
  const Alignment A{{{0, 0}, {1, 0}, {2, 1}}}, B{{{0, 0}, {1, 1}, {1, 2}}};
  const Alignment C = compose_alignments(X, Y, Z, A, B);
  EXPECT_EQ(to_cigar(X, Z, C), "1D1=1I");
}

TEST(Compose, TriangleInequalityUnderMetric) {
  Rng rng(7);
  for (int it = 0; it < 1000; ++it) {
    const int sigma = 3;
    const WeightFn w = random_metric(rng, sigma, uniform(rng, 1, 4));
    const SymbolString X = random_string(rng, uniform(rng, 0, 12), sigma);
    const SymbolString Y = mutate(rng, X, uniform(rng, 0, 4), sigma);
    const SymbolString Z = mutate(rng, Y, uniform(rng, 0, 4), sigma);
    const Alignment A = *wed_quadratic(X, Y, w).alignment, B = *wed_quadratic(Y, Z, w).alignment;
    const Alignment C = compose_alignments(X, Y, Z, A, B);
    EXPECT_LE(alignment_cost(X, Z, C, w), alignment_cost(X, Y, A, w) + alignment_cost(Y, Z, B, w));
  }
}

TEST(Compose, DomainMismatch) {
  const SymbolString X{0}, Y{0}, Z{0, 0};
  const Alignment A{{{0, 0}, {1, 1}}}, B{{{0, 0}, {2, 2}}};
  EXPECT_THROW(compose_alignments(X, Y, Z, A, B), AlignmentError);
}

TEST(Split, AtFirstPoint) {
  const Alignment a{{{0, 0}, {2, 2}}};
  auto [a1, a2] = split_alignment(a, {0, 0});
  EXPECT_EQ(a1.bp.size(), 1u);
  EXPECT_EQ(a2.bp, a.bp);
}

TEST(Split, IdentityHalves) {
  const SymbolString X{0, 1, 2, 3};
  const Alignment a{{{0, 0}, {4, 4}}};
  auto [a1, a2] = split_alignment(a, {2, 2});
  const WeightFn w = WeightFn::unit(4);
  EXPECT_EQ(alignment_cost(X, X, a1, w), 0);
  EXPECT_EQ(alignment_cost(X, X, a2, w), 0);
  EXPECT_EQ(a1.back(), (Point{2, 2}));
  EXPECT_EQ(a2.front(), (Point{2, 2}));
}

TEST(Split, OffPathPointIsRejected) {
  EXPECT_THROW(split_alignment(Alignment{{{0, 0}, {2, 2}}}, {1, 0}), AlignmentError);
}

TEST(Split, RandomSplitsConserveCost) {
  Rng rng(8);
  for (int it = 0; it < 500; ++it) {
    const int sigma = 3;
    const WeightFn w = random_weights(rng, sigma, uniform(rng, 1, 5));
    const SymbolString X = random_string(rng, uniform(rng, 1, 20), sigma);
    const SymbolString Y = mutate(rng, X, uniform(rng, 0, 5), sigma);
    const Alignment a = *wed_quadratic(X, Y, w).alignment;
    const auto pts = expand_breakpoints(a);
    const Point at = pts[uniform(rng, 0, pts.size() - 1)];
    auto [a1, a2] = split_alignment(a, at);
    const SymbolString X2(X.begin() + at.x, X.end()), Y2(Y.begin() + at.y, Y.end());
    const Cost c2 = alignment_cost(X2, Y2, shift(a2, -at.x, -at.y), w);
    EXPECT_EQ(alignment_cost(X, Y, a1, w) + c2, alignment_cost(X, Y, a, w));
  }
}
