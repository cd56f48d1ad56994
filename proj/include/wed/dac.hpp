#pragma once

#include <cmath>
#include <optional>

#include "wed/band_solver.hpp"
#include "wed/core.hpp"
#include "wed/oracle.hpp"
#include "wed/pillar.hpp"
#include "wed/selfed.hpp"

namespace wed {

enum class Engine { Pillar, Standard, Auto };

// How Split locates l1 and l2: one wave-limited Landau-Vishkin run per side, or exponential plus
// binary search over bounded self-edit distance probes. Both give the same extents.
enum class ExtentSearch { Waves, Binary };

struct SolverConfig {
  std::int64_t selfed_factor = 11;
  Engine engine = Engine::Auto;
  ExtentSearch extents = ExtentSearch::Waves;
};

struct DacStats {
  std::int64_t calls = 0;
  std::int64_t max_depth = 0;
  std::int64_t base_cases = 0;
  std::int64_t splits = 0;
  std::int64_t failed_splits = 0;
  std::int64_t band_calls = 0;
};

struct WedResult {
  Cost cost = kInf;
  std::optional<Alignment> alignment;
  DacStats stats;
  bool finite() const { return !is_inf(cost); }
};

struct SplitOutcome {
  bool ok = false;
  std::int64_t x_cut = 0;
  std::int64_t y_cut = 0;
};

// Extents l1 <= m <= l2 of the longest fragments around m with self-edit distance at most bound.
struct Extents {
  std::int64_t l1 = 0, l2 = 0;
};

inline Extents split_extents(const View& X, std::int64_t m, std::int64_t bound, ExtentSearch how) {
  const std::int64_t n = X.size();
  if (how == ExtentSearch::Waves)
    return {m - detail::self_reach(X.sub(0, m), bound, true), m + detail::self_reach(X.sub(m, n), bound, false)};
  auto ok = [&](std::int64_t b, std::int64_t e) { return selfed_bounded(X.sub(b, e), bound, false).within(); };
  // smallest i in [0, m] with ok(i, m)
  auto left = [&] {
    std::int64_t good = m, len = 1;
    while (len <= m && ok(m - len, m)) good = m - len, len *= 2;
    if (good == 0) return std::int64_t{0};
    std::int64_t bad = std::max<std::int64_t>(-1, m - len);
    while (good - bad > 1) {
      const std::int64_t mid = bad + (good - bad) / 2;
      if (mid >= 0 && ok(mid, m)) good = mid;
      else bad = mid;
    }
    return good;
  };
  auto right = [&] {
    std::int64_t good = m, len = 1;
    while (m + len <= n && ok(m, m + len)) good = m + len, len *= 2;
    if (good == n) return n;
    std::int64_t bad = std::min(n + 1, m + len);
    while (bad - good > 1) {
      const std::int64_t mid = good + (bad - good) / 2;
      if (mid <= n && ok(m, mid)) good = mid;
      else bad = mid;
    }
    return good;
  };
  return {left(), right()};
}

namespace detail {

inline FourWayResult run_band(const View& X, const View& Y, const WeightFn& w, std::int64_t d, std::int64_t k,
                              Engine engine, int only) {
  if (engine == Engine::Auto) {
    const double n = static_cast<double>(X.size() + Y.size());
    engine = n > std::pow(static_cast<double>(k), 3) ? Engine::Pillar : Engine::Standard;
  }
  BandOptions opt;
  opt.only = only;
  return engine == Engine::Pillar ? solve_pillar(X, Y, w, d, k, opt) : solve_standard(X, Y, w, d, k, opt);
}

}  // namespace detail

// One call of the splitting procedure; ext caches the extents, which do not depend on d.
inline SplitOutcome split(const View& X, const View& Y, std::int64_t d, std::int64_t k, const WeightFn& w,
                          const SolverConfig& cfg, std::optional<Extents>* ext = nullptr, DacStats* stats = nullptr) {
  const std::int64_t nx = X.size(), ny = Y.size();
  // every alignment pays at least one unit per unmatched length difference
  if (std::abs(nx - ny) > d) return {};
  const std::int64_t m = nx / 2;
  const std::int64_t bound = cfg.selfed_factor * k;
  std::optional<Extents> local;
  if (!ext) ext = &local;
  if (!*ext) *ext = split_extents(X, m, bound, cfg.extents);
  const auto [l1, l2] = **ext;
  const std::int64_t ya = std::max<std::int64_t>(0, l1 - d), ye = std::min(ny, l2 + d);
  const View Xs = X.sub(l1, l2);
  const bool whole = l1 == 0 && l2 == nx;
  const View Ys = whole ? Y : Y.sub(ya, ye);
  if (stats) ++stats->band_calls;
  const int which = whole ? 0 : l2 == nx ? 1 : l1 == 0 ? 2 : 3;
  const FourWayResult r = detail::run_band(Xs, Ys, w, d, std::max<std::int64_t>(1, 2 * bound), cfg.engine, which);
  const Witnessed& c = which == 0 ? r.full : which == 1 ? r.suffix_free : which == 2 ? r.prefix_free : r.substring;
  if (!c.finite()) return {};
  // The expansion fills points backwards from each breakpoint, so (m, m') lies on the segment
  // that ends at the first breakpoint with x >= m.
  const std::int64_t ml = m - l1;
  const auto& bp = c.alignment->bp;
  const Point q = *std::lower_bound(bp.begin(), bp.end(), ml, [](const Point& p, std::int64_t v) { return p.x < v; });
  return {true, m, q.y - (q.x - ml) + (whole ? 0 : ya)};
}

namespace detail {

struct Dac {
  const WeightFn& w;
  const SolverConfig& cfg;
  bool want;
  DacStats stats;

  struct Out {
    Cost cost = kInf;
    Alignment a;
  };

  Out closed_form(const View& X, const View& Y) {
    Out o;
    Cost c = 0;
    for (std::int64_t x = 0; x < X.size(); ++x) c = cadd(c, w.del(X[x]));
    for (std::int64_t y = 0; y < Y.size(); ++y) c = cadd(c, w.ins(Y[y]));
    o.cost = c;
    if (want) o.a = straight_path(X, Y, {0, 0}, {X.size(), Y.size()});
    return o;
  }

  Out banded(const View& X, const View& Y, std::int64_t d) {
    Out o;
    const SymbolString xs = fetch(X, 0, X.size()), ys = fetch(Y, 0, Y.size());
    auto r = banded_dp(xs, ys, w, w.units(d), want);
    o.cost = r.cost;
    if (want && r.alignment) o.a = *r.alignment;
    return o;
  }

  // Returns wed(X, Y) when it is at most k units; otherwise infinity or the cost of some alignment.
  Out run(const View& X, const View& Y, std::int64_t k, std::int64_t depth) {
    ++stats.calls;
    stats.max_depth = std::max(stats.max_depth, depth);
    const std::int64_t nx = X.size(), ny = Y.size();
    if (nx == 0 || ny == 0) return closed_form(X, Y);
    if (nx == ny && X.lcp(Y) == nx) {
      Out o;
      o.cost = 0;
      if (want) o.a = diagonal({0, 0}, {nx, ny});
      return o;
    }
    if (k == 0) return {};
    if (nx <= 1) return banded(X, Y, k);
    const std::int64_t n = nx + ny;
    std::int64_t d = std::min(k, (2 * k * k + n - 1) / n);
    if (ed_bounded(X, Y, d, false).within()) {
      Out o = banded(X, Y, d);
      if (!is_inf(o.cost)) {
        ++stats.base_cases;
        return o;
      }
    }
    std::optional<Extents> ext;
    SplitOutcome s;
    while (!(s = split(X, Y, d, k, w, cfg, &ext, &stats)).ok) {
      ++stats.failed_splits;
      if (d == k) return {};
      d = std::min(k, 2 * d);
    }
    ++stats.splits;
    Out a = run(X.sub(0, s.x_cut), Y.sub(0, s.y_cut), k, depth + 1);
    if (is_inf(a.cost)) return {};
    Out b = run(X.sub(s.x_cut, nx), Y.sub(s.y_cut, ny), k, depth + 1);
    if (is_inf(b.cost)) return {};
    Out o;
    o.cost = cadd(a.cost, b.cost);
    if (want) {
      o.a = std::move(a.a);
      append(o.a, shift(std::move(b.a), s.x_cut, s.y_cut));
    }
    return o;
  }
};

}  // namespace detail

// wed(X, Y) when it is at most k (a cost in units of w's denominator), and infinity otherwise.
inline WedResult weighted_ed(const View& X, const View& Y, Cost k, const WeightFn& w, const SolverConfig& cfg = {},
                             bool want_alignment = false) {
  if (!is_normalized(w)) throw std::invalid_argument("weighted_ed requires a normalized weight function");
  if (cfg.selfed_factor < 1) throw std::invalid_argument("selfed factor must be at least 1");
  WedResult res;
  if (k < 0) return res;
  detail::Dac dac{w, cfg, want_alignment, {}};
  auto o = dac.run(X, Y, w.ceil_units(k), 0);
  res.stats = dac.stats;
  if (o.cost > k) return res;
  res.cost = o.cost;
  if (want_alignment) res.alignment = canonical(X, Y, o.a);
  return res;
}

inline LceBackend backend_for(Engine e) { return e == Engine::Pillar ? LceBackend::SuffixArray : LceBackend::Direct; }

inline WedResult wed_leq_k(const SymbolString& X, const SymbolString& Y, const WeightFn& w, Cost k,
                           const SolverConfig& cfg = {}, bool want_alignment = false) {
  PillarIndex ix({X, Y}, backend_for(cfg.engine));
  return weighted_ed(View(ix, ix.whole(0)), View(ix, ix.whole(1)), k, w, cfg, want_alignment);
}

// Exact wed(X, Y): a first threshold near (n / log^2 n)^(1/3) with the PILLAR engine, then
// doubling thresholds with the standard engine.
inline WedResult wed_auto(const View& X, const View& Y, const WeightFn& w, const SolverConfig& cfg = {},
                          bool want_alignment = false) {
  const double n = static_cast<double>(std::max<std::int64_t>({X.size(), Y.size(), 2}));
  const double lg = std::log2(n);
  std::int64_t k = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::cbrt(n / (lg * lg))));
  SolverConfig c = cfg;
  c.engine = cfg.engine == Engine::Auto ? Engine::Pillar : cfg.engine;
  DacStats total;
  for (;;) {
    WedResult r = weighted_ed(X, Y, w.units(k), w, c, want_alignment);
    total.calls += r.stats.calls;
    total.max_depth = std::max(total.max_depth, r.stats.max_depth);
    total.base_cases += r.stats.base_cases;
    total.splits += r.stats.splits;
    total.failed_splits += r.stats.failed_splits;
    total.band_calls += r.stats.band_calls;
    if (r.finite()) {
      r.stats = total;
      return r;
    }
    k *= 2;
    if (cfg.engine == Engine::Auto) c.engine = Engine::Standard;
  }
}

inline WedResult wed_exact(const SymbolString& X, const SymbolString& Y, const WeightFn& w,
                           const SolverConfig& cfg = {}, bool want_alignment = false) {
  PillarIndex ix({X, Y}, LceBackend::SuffixArray);
  return wed_auto(View(ix, ix.whole(0)), View(ix, ix.whole(1)), w, cfg, want_alignment);
}

}  // namespace wed
