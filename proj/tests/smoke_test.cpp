#include <gtest/gtest.h>

#include <random>

#include "wed/dac.hpp"

using namespace wed;

TEST(Smoke, KittenSitting) {
  auto enc = [](const std::string& s) {
    SymbolString r;
    for (char c : s) r.push_back(static_cast<Sym>(c - 'a'));
    return r;
  };
  WeightFn w = WeightFn::unit(26);
  auto r = wed_exact(enc("kitten"), enc("sitting"), w, {}, true);
  EXPECT_EQ(r.cost, 3);
}

TEST(Smoke, RandomAgainstBanded) {
  std::mt19937_64 rng(1);
  for (int it = 0; it < 300; ++it) {
    const int n = rng() % 60 + 1, sigma = rng() % 4 + 1;
    SymbolString X(n), Y;
    for (auto& c : X) c = rng() % sigma;
    Y = X;
    int e = rng() % 6;
    for (int t = 0; t < e && !Y.empty(); ++t) {
      int p = rng() % Y.size();
      switch (rng() % 3) {
        case 0: Y[p] = rng() % sigma; break;
        case 1: Y.erase(Y.begin() + p); break;
        default: Y.insert(Y.begin() + p, rng() % sigma);
      }
    }
    WeightFn w(sigma, 3);
    for (int a = 0; a <= sigma; ++a)
      for (int b = 0; b <= sigma; ++b) w.set(a, b, a == b ? 0 : 3 + rng() % 5);
    for (Engine eng : {Engine::Pillar, Engine::Standard}) {
      SolverConfig cfg;
      cfg.engine = eng;
      const Cost k = rng() % 20;
      auto ref = wed_banded(X, Y, w, k);
      auto got = wed_leq_k(X, Y, w, k, cfg, true);
      ASSERT_EQ(got.cost, ref.cost) << it;
      if (got.finite()) ASSERT_EQ(alignment_cost(X, Y, *got.alignment, w), got.cost);
    }
  }
}
