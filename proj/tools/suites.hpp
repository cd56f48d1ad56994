#pragma once

#include <functional>
#include <optional>
#include <random>
#include <string>

#include "io.hpp"
#include "json.hpp"
#include "wed/band_solver.hpp"
#include "wed/dac.hpp"
#include "wed/hardgen.hpp"
#include "wed/oracle.hpp"

namespace wed::suites {

using Rng = std::mt19937_64;

inline std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

inline SymbolString random_string(Rng& rng, std::int64_t n, int sigma) {
  SymbolString s(n);
  for (auto& c : s) c = static_cast<Sym>(uniform(rng, 0, sigma - 1));
  return s;
}

// Off-diagonal weights drawn from [den, spread * den].
inline WeightFn random_weights(Rng& rng, int sigma, Cost den, Cost spread = 3) {
  WeightFn w(sigma, den);
  for (int a = 0; a <= sigma; ++a)
    for (int b = 0; b <= sigma; ++b) w.set(a, b, a == b ? 0 : uniform(rng, den, spread * den));
  return w;
}

inline SymbolString edit(Rng& rng, SymbolString s, std::int64_t edits, int sigma) {
  for (std::int64_t t = 0; t < edits; ++t) {
    const int kind = s.empty() ? 2 : static_cast<int>(uniform(rng, 0, 2));
    if (kind == 0) {
      auto& c = s[uniform(rng, 0, s.size() - 1)];
      c = static_cast<Sym>((c + uniform(rng, 1, std::max(1, sigma - 1))) % sigma);
    } else if (kind == 1) {
      s.erase(s.begin() + uniform(rng, 0, s.size() - 1));
    } else {
      s.insert(s.begin() + uniform(rng, 0, s.size()), static_cast<Sym>(uniform(rng, 0, sigma - 1)));
    }
  }
  return s;
}

// Mostly periodic strings with a few edits, so that some inputs have small self-edit distance.
inline SymbolString structured_string(Rng& rng, std::int64_t n, int sigma) {
  const std::int64_t mode = uniform(rng, 0, 2);
  if (mode == 0 || n == 0) return random_string(rng, n, sigma);
  const std::int64_t period = uniform(rng, 1, mode == 1 ? 4 : std::max<std::int64_t>(1, n / 4));
  const SymbolString base = random_string(rng, period, sigma);
  SymbolString s(n);
  for (std::int64_t i = 0; i < n; ++i) s[i] = base[i % period];
  s = edit(rng, s, uniform(rng, 0, 3), sigma);
  s.resize(n, 0);
  return s;
}

struct Instance {
  SymbolString X, Y;
  WeightFn w;
};

// Random X with e planted edits; weights in [den, 2 den] keep wed(X, Y) <= 2e.
inline Instance planted(std::uint64_t seed, std::int64_t n, std::int64_t e, int sigma = 4, Cost den = 4) {
  Rng rng(seed);
  Instance in;
  in.X = random_string(rng, n, sigma);
  in.Y = edit(rng, in.X, e, sigma);
  in.w = random_weights(rng, sigma, den, 2);
  return in;
}

inline Matrix random_matrix(Rng& rng, std::int64_t r, std::int64_t c, Cost E) {
  Matrix m(r, c, 0);
  for (auto& v : m.a) v = uniform(rng, -E, E);
  return m;
}

inline GadgetParams random_params(Rng& rng, std::int64_t p, std::int64_t q, std::int64_t r, std::int64_t tau,
                                  Cost E) {
  GadgetParams g;
  g.A = random_matrix(rng, p, q, E);
  g.B = random_matrix(rng, q, r, E);
  g.C = random_matrix(rng, r, p, E);
  g.tau = tau;
  g.E = E;
  return g;
}

inline nlohmann::json matrix_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::int64_t i = 0; i < m.rows; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::int64_t j = 0; j < m.cols; ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

struct Summary {
  std::string suite;
  std::int64_t cases = 0;
  std::int64_t failures = 0;
  std::optional<nlohmann::json> repro;
};

struct VerifyOptions {
  std::int64_t cases = 100;
  std::int64_t max_n = 64;
  std::uint64_t seed = 1;
  bool inject_fault = false;  // perturbs the fast answers so the repro path can be exercised
};

namespace detail {

// Greedy shrink: drop single symbols of X, then of Y, while the case keeps failing.
inline void minimize(Instance& in, const std::function<bool(const Instance&)>& fails) {
  for (bool progress = true; progress;) {
    progress = false;
    for (SymbolString* s : {&in.X, &in.Y})
      for (std::size_t i = 0; i < s->size();) {
        Instance t = in;
        SymbolString& ts = s == &in.X ? t.X : t.Y;
        ts.erase(ts.begin() + i);
        if (fails(t)) {
          in = std::move(t);
          progress = true;
        } else {
          ++i;
        }
      }
  }
}

inline nlohmann::json instance_json(const Instance& in) {
  return {{"X", in.X}, {"Y", in.Y}, {"weights", io::weights_json(in.w)}};
}

}  // namespace detail

// weighted_ed under both engines against the banded oracle, and both band solvers against the
// brute-force four-way oracle.
inline Summary verify_core(const VerifyOptions& o) {
  Summary s{"core"};
  Rng rng(o.seed);
  const Cost bump = o.inject_fault ? 1 : 0;
  for (std::int64_t it = 0; it < o.cases && !s.repro; ++it) {
    ++s.cases;
    const int sigma = static_cast<int>(uniform(rng, 1, 8));
    Instance in;
    in.X = structured_string(rng, uniform(rng, 0, o.max_n), sigma);
    in.Y = edit(rng, in.X, uniform(rng, 0, std::max<std::int64_t>(1, in.X.size() / 4)), sigma);
    in.w = random_weights(rng, sigma, uniform(rng, 1, 64));
    const std::int64_t k = uniform(rng, 1, std::max<std::int64_t>(1, in.X.size()));

    auto dac_fails = [&](const Instance& t) {
      const Cost want = wed_banded(t.X, t.Y, t.w, t.w.units(k)).cost;
      for (Engine e : {Engine::Pillar, Engine::Standard}) {
        SolverConfig cfg;
        cfg.engine = e;
        const WedResult r = wed_leq_k(t.X, t.Y, t.w, t.w.units(k), cfg, true);
        const Cost got = r.finite() ? r.cost + bump : r.cost;
        if (got != want) return true;
        if (r.alignment && alignment_cost(t.X, t.Y, *r.alignment, t.w) != r.cost) return true;
      }
      return false;
    };
    if (dac_fails(in)) {
      ++s.failures;
      detail::minimize(in, dac_fails);
      s.repro = detail::instance_json(in);
      (*s.repro)["check"] = "weighted_ed vs banded oracle";
      (*s.repro)["k"] = k;
      break;
    }

    // band solvers need selfed(X) <= k'
    const std::int64_t kk = uniform(rng, 1, 24);
    Instance b = in;
    b.X.resize(std::min<std::size_t>(b.X.size(), 96));
    if (selfed_brute(b.X) > kk) continue;
    const std::int64_t d = uniform(rng, 0, kk);
    auto band_fails = [&](const Instance& t) {
      if (selfed_brute(t.X) > kk) return false;
      PillarIndex ix({t.X, t.Y});
      View X(ix, ix.whole(0)), Y(ix, ix.whole(1));
      const FourWayCosts want = four_way_brute(t.X, t.Y, t.w, d);
      FourWayCosts a = solve_pillar(X, Y, t.w, d, kk).costs(), c = solve_standard(X, Y, t.w, d, kk).costs();
      if (bump && !is_inf(a.full)) a.full += bump;
      return !(a == want) || !(c == want);
    };
    if (band_fails(b)) {
      ++s.failures;
      detail::minimize(b, band_fails);
      s.repro = detail::instance_json(b);
      (*s.repro)["check"] = "band solvers vs four-way oracle";
      (*s.repro)["d"] = d;
      (*s.repro)["k"] = kk;
    }
  }
  return s;
}

// Closed-form gadget distances against the quadratic oracle.
inline Summary verify_hardgen(const VerifyOptions& o) {
  Summary s{"hardgen"};
  Rng rng(o.seed ^ 0x9e3779b97f4a7c15ULL);
  const Cost bump = o.inject_fault ? 1 : 0;
  for (std::int64_t it = 0; it < o.cases && !s.repro; ++it) {
    ++s.cases;
    const std::int64_t p = uniform(rng, 1, 4), q = uniform(rng, 1, 4), r = uniform(rng, 1, 3);
    const GadgetParams g = random_params(rng, p, q, r, uniform(rng, 1, p), uniform(rng, 1, 3));
    const BatchInstance b = gen_three_matrix_gadget(g);
    for (std::size_t t = 0; t < b.X.size() && !s.repro; ++t) {
      const auto [l, i] = b.label[t];
      const Cost want = predicted_distance(g, b, l, i);
      const Cost got = wed_quadratic(b.X[t], b.Y, b.w, false).cost + bump;
      if (got == want) continue;
      ++s.failures;
      s.repro = nlohmann::json{{"check", "gadget closed form"}, {"A", matrix_json(g.A)}, {"B", matrix_json(g.B)},
                               {"C", matrix_json(g.C)}, {"tau", g.tau}, {"E", g.E}, {"l", l}, {"i", i},
                               {"oracle", got}, {"predicted", want}};
    }
  }
  return s;
}

}  // namespace wed::suites
