#include <gtest/gtest.h>

#include <cmath>

#include "test_util.hpp"
#include "wed/dac.hpp"
#include "wed/oracle.hpp"

using namespace wed;
using namespace wed::testing;

namespace {

struct Pair {
  PillarIndex ix;
  View x, y;
  Pair(const SymbolString& a, const SymbolString& b, LceBackend be = LceBackend::SuffixArray)
      : ix({a, b}, be), x(ix, ix.whole(0)), y(ix, ix.whole(1)) {}
};

}  // namespace

TEST(Split, IdenticalStringsSplitAtTheMiddle) {
  const SymbolString X = from_text("the quick brown fox jumps over");
  Pair p(X, X);
  const auto s = split(p.x, p.y, 2, 2, WeightFn::unit(256), {});
  ASSERT_TRUE(s.ok);
  EXPECT_EQ(s.x_cut, static_cast<std::int64_t>(X.size() / 2));
  EXPECT_EQ(s.y_cut, s.x_cut);
}

TEST(Split, PartsSumToTheDistance) {
  Rng rng(1);
  int tested = 0;
  for (int it = 0; it < 600; ++it) {
    const int sigma = uniform(rng, 2, 4);
    const SymbolString X = random_string(rng, uniform(rng, 4, 120), sigma);
    const SymbolString Y = mutate(rng, X, uniform(rng, 0, 6), sigma);
    const WeightFn w = random_weights(rng, sigma, uniform(rng, 1, 3));
    const Cost c = wed_quadratic(X, Y, w, false).cost;
    const std::int64_t k = w.ceil_units(c) + uniform(rng, 0, 3);
    const std::int64_t d = std::min(k, w.ceil_units(c) + uniform(rng, 0, 2));
    Pair p(X, Y);
    for (Engine e : {Engine::Pillar, Engine::Standard}) {
      SolverConfig cfg;
      cfg.engine = e;
      const auto s = split(p.x, p.y, d, k, w, cfg);
      ASSERT_TRUE(s.ok);
      EXPECT_EQ(s.x_cut, static_cast<std::int64_t>(X.size() / 2));
      const SymbolString x1(X.begin(), X.begin() + s.x_cut), x2(X.begin() + s.x_cut, X.end());
      const SymbolString y1(Y.begin(), Y.begin() + s.y_cut), y2(Y.begin() + s.y_cut, Y.end());
      ASSERT_EQ(cadd(wed_quadratic(x1, y1, w, false).cost, wed_quadratic(x2, y2, w, false).cost), c);
      ++tested;
    }
  }
  EXPECT_EQ(tested, 1200);
}

TEST(Split, FailsWhenNoCheapPathExists) {
  const SymbolString X = from_text("aaaaaaaaaaaaaaaa"), Y = from_text("bbbbbbbbbbbbbbbb");
  Pair p(X, Y);
  EXPECT_FALSE(split(p.x, p.y, 1, 2, WeightFn::unit(256), {}).ok);
}

TEST(Split, ExtentSearchesAgree) {
  Rng rng(2);
  for (int it = 0; it < 300; ++it) {
    const SymbolString X = mutate(rng, periodic_string(rng, uniform(rng, 1, 300), 3, uniform(rng, 1, 9)),
                                  uniform(rng, 0, 8), 3);
    Pair p(X, X);
    const std::int64_t m = X.size() / 2, bound = uniform(rng, 0, 20);
    const Extents a = split_extents(p.x, m, bound, ExtentSearch::Waves);
    const Extents b = split_extents(p.x, m, bound, ExtentSearch::Binary);
    ASSERT_EQ(a.l1, b.l1);
    ASSERT_EQ(a.l2, b.l2);
  }
}

TEST(WeightedEd, IdenticalIsZero) {
  const SymbolString X = from_text("abracadabra");
  Pair p(X, X);
  EXPECT_EQ(weighted_ed(p.x, p.y, 0, WeightFn::unit(256)).cost, 0);
}

TEST(WeightedEd, RejectsBadConfig) {
  const SymbolString X = from_text("ab");
  Pair p(X, X);
  SolverConfig cfg;
  cfg.selfed_factor = 0;
  EXPECT_THROW(weighted_ed(p.x, p.y, 1, WeightFn::unit(256), cfg), std::invalid_argument);
}

TEST(WeightedEd, AgreesWithBanded) {
  Rng rng(3);
  for (int it = 0; it < 2000; ++it) {
    const int sigma = uniform(rng, 1, 4);
    const std::int64_t n = uniform(rng, 0, 256);
    const SymbolString X = it % 4 ? random_string(rng, n, sigma) : periodic_string(rng, n, sigma, uniform(rng, 1, 8));
    const SymbolString Y = it % 5 ? mutate(rng, X, uniform(rng, 0, 12), sigma) : random_string(rng, uniform(rng, 0, 256), sigma);
    const WeightFn w = it % 3 ? random_weights(rng, sigma, uniform(rng, 1, 4)) : WeightFn::unit(sigma);
    const Cost k = uniform(rng, 0, 24 * w.denominator());
    const Cost want = wed_banded(X, Y, w, k).cost;
    SolverConfig cfg;
    cfg.engine = it % 2 ? Engine::Pillar : Engine::Standard;
    Pair p(X, Y, backend_for(cfg.engine));
    const WedResult r = weighted_ed(p.x, p.y, k, w, cfg, true);
    ASSERT_EQ(r.cost, want) << "case " << it;
    if (r.finite()) {
      ASSERT_TRUE(r.alignment);
      ASSERT_EQ(alignment_cost(X, Y, *r.alignment, w), r.cost);
      ASSERT_EQ(r.alignment->bp.front(), (Point{0, 0}));
      ASSERT_EQ(r.alignment->bp.back(), (Point{static_cast<std::int64_t>(X.size()), static_cast<std::int64_t>(Y.size())}));
    }
  }
}

TEST(WeightedEd, DepthIsLogarithmic) {
  Rng rng(4);
  for (std::int64_t lg : {10, 12, 14}) {
    const std::int64_t n = std::int64_t{1} << lg;
    const SymbolString X = random_string(rng, n, 4);
    const SymbolString Y = mutate(rng, X, 8, 4);
    Pair p(X, Y);
    const WedResult r = weighted_ed(p.x, p.y, 16, WeightFn::unit(4));
    ASSERT_TRUE(r.finite());
    EXPECT_LE(r.stats.max_depth, 2 * lg + 2);
  }
}

TEST(WedAuto, Examples) {
  const WeightFn unit = WeightFn::unit(256);
  {
    Pair p({}, from_text("abc"));
    EXPECT_EQ(wed_auto(p.x, p.y, unit).cost, 3);
  }
  EXPECT_EQ(wed_exact(from_text("kitten"), from_text("sitting"), unit).cost, 3);
  EXPECT_EQ(wed_exact({}, {}, unit).cost, 0);
}

TEST(WedAuto, RandomWeightedPairs) {
  Rng rng(5);
  for (int it = 0; it < 300; ++it) {
    const int sigma = uniform(rng, 1, 5);
    const SymbolString X = random_string(rng, uniform(rng, 0, 512), sigma);
    const SymbolString Y = it % 2 ? mutate(rng, X, uniform(rng, 0, 40), sigma) : random_string(rng, uniform(rng, 0, 200), sigma);
    const WeightFn w = random_weights(rng, sigma, uniform(rng, 1, 3));
    const WedResult r = wed_exact(X, Y, w, {}, true);
    ASSERT_EQ(r.cost, wed_quadratic(X, Y, w, false).cost) << "case " << it;
    ASSERT_EQ(alignment_cost(X, Y, *r.alignment, w), r.cost);
  }
}

TEST(WedLeqK, OverThresholdIsInfinite) {
  const WeightFn unit = WeightFn::unit(256);
  EXPECT_FALSE(wed_leq_k(from_text("aaaa"), from_text("bbbb"), unit, 3).finite());
  EXPECT_EQ(wed_leq_k(from_text("aaaa"), from_text("bbbb"), unit, 4).cost, 4);
}
