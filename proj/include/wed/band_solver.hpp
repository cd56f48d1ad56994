#pragma once

#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <queue>
#include <stdexcept>

#include "wed/core.hpp"
#include "wed/decompose.hpp"
#include "wed/monge.hpp"
#include "wed/oracle.hpp"
#include "wed/pillar.hpp"
#include "wed/selfed.hpp"

namespace wed {

struct Witnessed {
  Cost cost = kInf;
  std::optional<Alignment> alignment;
  bool finite() const { return !is_inf(cost); }
};

struct FourWayResult {
  Witnessed full;
  Witnessed suffix_free;  // free start in Y
  Witnessed prefix_free;  // free end in Y
  Witnessed substring;    // both free

  FourWayCosts costs() const { return {full.cost, suffix_free.cost, prefix_free.cost, substring.cost}; }
};

struct BandStats;

struct BandOptions {
  bool want_witness = true;
  BandStats* stats = nullptr;
  int only = -1;          // in [0, 4): fill in just full, suffix_free, prefix_free or substring
  std::int64_t ell = 0;   // standard engine: phrase length override, 0 for the default formula
};

struct BandStats {
  std::int64_t ell = 0;
  std::int64_t relevant_boxes = 0;
  std::int64_t classes = 0;
  std::int64_t fresh_bands = 0;
  std::int64_t phrases = 0;
};

// Distances between the boundary vertices of one box of an alignment graph.
// Inputs run down the left column and then along the bottom row; outputs run along the top row
// and then down the right column. Every forward edge weight is capped at big and every edge also
// exists in reverse at cost big, so all entries are finite and the matrix is Monge; entries below
// big are exact forward distances.
struct BoundaryMatrix {
  Matrix m;
  Cost big = 0;
  std::vector<Point> in, out;  // box-local vertices
};

namespace detail {

// Indexes a window of a longer string by absolute positions.
struct Window {
  const SymbolString* s = nullptr;
  std::int64_t off = 0;
  Sym operator[](std::int64_t i) const { return (*s)[i - off]; }
  std::int64_t size() const { return off + static_cast<std::int64_t>(s->size()); }
};

inline SymbolString fetch(const View& v, std::int64_t b, std::int64_t e) {
  SymbolString s;
  s.reserve(std::max<std::int64_t>(0, e - b));
  for (std::int64_t i = b; i < e; ++i) s.push_back(v[i]);
  return s;
}

// Cheapest forward path from u to v inside the rectangle they span, restricted to vertices
// accepted by admit; returns its breakpoints in absolute coordinates.
template <class Admit>
Alignment local_path(const Window& X, const Window& Y, const WeightFn& w, Point u, Point v, Admit admit) {
  const std::int64_t W = v.x - u.x + 1, H = v.y - u.y + 1;
  std::vector<Cost> t(W * H, kInf);
  auto at = [&](std::int64_t x, std::int64_t y) -> Cost& { return t[(x - u.x) * H + (y - u.y)]; };
  at(u.x, u.y) = 0;
  for (std::int64_t x = u.x; x <= v.x; ++x)
    for (std::int64_t y = u.y; y <= v.y; ++y) {
      if ((x == u.x && y == u.y) || !admit(x, y)) continue;
      Cost c = kInf;
      if (x > u.x && y > u.y) c = cadd(at(x - 1, y - 1), w.sub(X[x - 1], Y[y - 1]));
      if (x > u.x) c = std::min(c, cadd(at(x - 1, y), w.del(X[x - 1])));
      if (y > u.y) c = std::min(c, cadd(at(x, y - 1), w.ins(Y[y - 1])));
      at(x, y) = c;
    }
  if (is_inf(at(v.x, v.y))) throw std::logic_error("no path inside the region");
  auto get = [&](std::int64_t x, std::int64_t y) -> Cost {
    if (x < u.x || y < u.y || x > v.x || y > v.y) return kInf;
    return at(x, y);
  };
  return backtrack(X, Y, w, v, u, get);
}

inline Alignment diagonal(Point u, Point v) {
  if (v.x - u.x != v.y - u.y) throw std::logic_error("zero-cost segment off the diagonal");
  if (u == v) return Alignment{{u}};
  return Alignment{{u, v}};
}

template <class SX, class SY>
Alignment straight_path(const SX& X, const SY& Y, Point u, Point v) {
  std::vector<Point> path{u};
  while (path.back().x < v.x) path.push_back({path.back().x + 1, path.back().y});
  while (path.back().y < v.y) path.push_back({path.back().x, path.back().y + 1});
  return from_path(path, X, Y);
}

// Handles empty strings and the early-outs shared by both engines.
inline std::optional<FourWayResult> band_prelude(const View& X, const View& Y, const WeightFn& w, std::int64_t d,
                                                 bool want_witness) {
  const std::int64_t n = X.size(), m = Y.size();
  if (d < 0) throw std::invalid_argument("band solver needs d >= 0");
  if (m - n > 2 * d) throw std::invalid_argument("band solver needs |Y| - |X| <= 2d");
  const Cost cap = w.units(d);
  FourWayResult r;
  auto put = [&](Witnessed& slot, Cost c, Point a, Point b) {
    if (c > cap) return;
    slot.cost = c;
    if (want_witness) slot.alignment = straight_path(X, Y, a, b);
  };
  if (n == 0) {
    Cost all = 0;
    for (std::int64_t y = 0; y < m; ++y) all = cadd(all, w.ins(Y[y]));
    put(r.full, all, {0, 0}, {0, m});
    put(r.suffix_free, 0, {0, m}, {0, m});
    put(r.prefix_free, 0, {0, 0}, {0, 0});
    put(r.substring, 0, {0, 0}, {0, 0});
    return r;
  }
  if (n - m > d) return r;
  if (m == 0) {
    Cost all = 0;
    for (std::int64_t x = 0; x < n; ++x) all = cadd(all, w.del(X[x]));
    put(r.full, all, {0, 0}, {n, 0});
    r.suffix_free = r.prefix_free = r.substring = r.full;
    return r;
  }
  if (!ed_bounded(X, Y, 4 * d, false).within()) return r;
  return std::nullopt;
}

}  // namespace detail

inline BoundaryMatrix box_boundary_matrix(const SymbolString& xs, const SymbolString& ys, const WeightFn& w, Cost big,
                                          std::int64_t cap = 4096) {
  const std::int64_t W = xs.size(), H = ys.size();
  if (W > cap || H > cap) throw std::length_error("box exceeds the configured size cap");
  if (big <= 0) throw std::invalid_argument("big must be positive");
  BoundaryMatrix bm;
  bm.big = big;
  for (std::int64_t y = H; y >= 0; --y) bm.in.push_back({0, y});
  for (std::int64_t x = 1; x <= W; ++x) bm.in.push_back({x, 0});
  for (std::int64_t x = 0; x <= W; ++x) bm.out.push_back({x, H});
  for (std::int64_t y = H - 1; y >= 0; --y) bm.out.push_back({W, y});
  bm.m = Matrix(bm.in.size(), bm.out.size());

  const std::int64_t V = (W + 1) * (H + 1);
  auto id = [&](std::int64_t x, std::int64_t y) { return x * (H + 1) + y; };
  auto capped = [&](Cost c) { return std::min(c, big); };
  std::vector<Cost> dist(V);
  using Item = std::pair<Cost, std::int64_t>;
  for (std::size_t s = 0; s < bm.in.size(); ++s) {
    std::fill(dist.begin(), dist.end(), kInf);
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist[id(bm.in[s].x, bm.in[s].y)] = 0;
    pq.push({0, id(bm.in[s].x, bm.in[s].y)});
    while (!pq.empty()) {
      auto [c, v] = pq.top();
      pq.pop();
      if (c != dist[v]) continue;
      const std::int64_t x = v / (H + 1), y = v % (H + 1);
      auto relax = [&](std::int64_t nx, std::int64_t ny, Cost e) {
        const std::int64_t u = id(nx, ny);
        if (c + e < dist[u]) dist[u] = c + e, pq.push({dist[u], u});
      };
      if (x < W) relax(x + 1, y, capped(w.del(xs[x])));
      if (y < H) relax(x, y + 1, capped(w.ins(ys[y])));
      if (x < W && y < H) relax(x + 1, y + 1, capped(w.sub(xs[x], ys[y])));
      if (x > 0) relax(x - 1, y, big);
      if (y > 0) relax(x, y - 1, big);
    }
    for (std::size_t t = 0; t < bm.out.size(); ++t) bm.m(s, t) = dist[id(bm.out[t].x, bm.out[t].y)];
  }
  return bm;
}

namespace detail {

struct Corner {
  std::int64_t row = -1, col = -1;
  Cost cost = kInf;
};

// Picks the four answers out of a start-by-end distance matrix; rows are start rows 0.., columns
// are end rows col0..; smallest row, then smallest column wins ties.
inline std::array<Corner, 4> pick_corners(const Matrix& D, std::int64_t last_col, Cost cap) {
  std::array<Corner, 4> c;
  auto offer = [&](Corner& slot, std::int64_t r, std::int64_t q) {
    const Cost v = D(r, q);
    if (v <= cap && v < slot.cost) slot = {r, q, v};
  };
  offer(c[0], 0, last_col);
  for (std::int64_t r = 0; r < D.rows; ++r) offer(c[1], r, last_col);
  for (std::int64_t q = 0; q < D.cols; ++q) offer(c[2], 0, q);
  for (std::int64_t r = 0; r < D.rows; ++r)
    for (std::int64_t q = 0; q < D.cols; ++q) offer(c[3], r, q);
  return c;
}

inline std::int64_t leftmost_argmin(std::int64_t count, const auto& f) {
  std::int64_t best = 0;
  Cost bv = kInf;
  for (std::int64_t t = 0; t < count; ++t) {
    const Cost v = f(t);
    if (v < bv) bv = v, best = t;
  }
  return best;
}

}  // namespace detail

namespace detail {

// The four answers by plain DP over the vertices with y - x in [-d, 3d]. This is the box sweep
// with unit boxes, whose boundary matrices are just the three edges of each cell.
inline FourWayResult band_dp_four_way(const View& X, const View& Y, const WeightFn& w, std::int64_t d,
                                      bool want_witness, int only) {
  const std::int64_t n = X.size(), m = Y.size();
  const Cost cap = w.units(d);
  const std::int64_t H = 4 * d + 1;
  const SymbolString xs = fetch(X, 0, n), ys = fetch(Y, 0, m);
  auto lo = [&](std::int64_t x) { return std::max<std::int64_t>(0, x - d); };
  auto hi = [&](std::int64_t x) { return std::min(m, x + 3 * d); };
  enum : char { kNone, kStart, kDiag, kDel, kIns };
  std::vector<Cost> prev(H), cur(H);
  std::vector<char> dir;
  FourWayResult res;

  auto recover = [&](std::int64_t q) {
    std::vector<Point> path{{n, q}};
    Point p{n, q};
    for (;;) {
      const char c = dir[p.x * H + (p.y - p.x + d)];
      if (c == kStart) break;
      if (c == kDiag) --p.x, --p.y;
      else if (c == kDel) --p.x;
      else --p.y;
      path.push_back(p);
    }
    std::reverse(path.begin(), path.end());
    return from_path(path, xs, ys);
  };

  auto sweep = [&](bool free_start, Witnessed& whole, Witnessed& open_end) {
    if (want_witness) dir.assign((n + 1) * H, kNone);
    std::fill(cur.begin(), cur.end(), kInf);
    // slot of (x, y) is y - x + d
    for (std::int64_t y = 0; y <= hi(0); ++y) {
      if (free_start || y == 0) {
        cur[y + d] = 0;
        if (want_witness) dir[y + d] = kStart;
      } else {
        cur[y + d] = cadd(cur[y - 1 + d], w.ins(ys[y - 1]));
        if (want_witness) dir[y + d] = kIns;
      }
    }
    for (std::int64_t x = 1; x <= n; ++x) {
      std::swap(prev, cur);
      std::fill(cur.begin(), cur.end(), kInf);
      const Sym a = xs[x - 1];
      const Cost del = w.del(a);
      char* dr = want_witness ? &dir[x * H] : nullptr;
      for (std::int64_t y = lo(x); y <= hi(x); ++y) {
        const std::int64_t s = y - x + d;
        Cost c = kInf;
        char how = kNone;
        if (y > 0 && s < H) {
          c = cadd(prev[s], w.sub(a, ys[y - 1]));
          how = kDiag;
        }
        if (s + 1 < H) {
          const Cost v = cadd(prev[s + 1], del);
          if (v < c) c = v, how = kDel;
        }
        if (s > 0 && y > lo(x)) {
          const Cost v = cadd(cur[s - 1], w.ins(ys[y - 1]));
          if (v < c) c = v, how = kIns;
        }
        cur[s] = c;
        if (dr) dr[s] = how;
      }
    }
    auto at = [&](std::int64_t q) { return q < lo(n) || q > hi(n) ? kInf : cur[q - n + d]; };
    if (at(m) <= cap) {
      whole.cost = at(m);
      if (want_witness) whole.alignment = recover(m);
    }
    std::int64_t bq = -1;
    for (std::int64_t q = lo(n); q <= hi(n); ++q)
      if (at(q) <= cap && (bq < 0 || at(q) < at(bq))) bq = q;
    if (bq >= 0) {
      open_end.cost = at(bq);
      if (want_witness) open_end.alignment = recover(bq);
    }
  };
  if (only < 0 || only == 0 || only == 2) sweep(false, res.full, res.prefix_free);
  if (only < 0 || only == 1 || only == 3) sweep(true, res.suffix_free, res.substring);
  return res;
}

}  // namespace detail

// PILLAR engine: decomposition of X, isomorphic column bands, Monge powers along periodic runs.
inline FourWayResult solve_pillar(const View& X, const View& Y, const WeightFn& w, std::int64_t d, std::int64_t k,
                                  const BandOptions& opt = {}) {
  const bool want_witness = opt.want_witness;
  BandStats* stats = opt.stats;
  const int only = opt.only;
  if (k < 1) throw std::invalid_argument("solve_pillar needs k >= 1");
  if (auto r = detail::band_prelude(X, Y, w, d, want_witness)) return *r;
  const std::int64_t n = X.size(), m = Y.size();
  const Cost cap = w.units(d), big = w.units(d + 1);
  const PhraseDecomposition dec = decompose_pillar(X, k);
  const std::vector<std::int64_t>& xb = dec.x;
  const std::int64_t M = dec.phrases();
  auto lo = [&](std::int64_t x) { return std::max<std::int64_t>(0, x - d); };
  auto hi = [&](std::int64_t x) { return std::min(m, x + 3 * d); };
  auto height = [&](std::int64_t x) { return hi(x) - lo(x) + 1; };
  auto capped = [&](Cost c) { return std::min(c, big); };

  std::vector<std::int64_t> next_fresh(M + 1, M);
  for (std::int64_t j = M - 1; j >= 0; --j) next_fresh[j] = dec.fresh[j] ? j : next_fresh[j + 1];

  // Bands that are not isomorphic to their predecessor.
  std::vector<std::int64_t> fbar;
  for (std::int64_t j = 0; j < M;) {
    std::int64_t run = 0;
    if (j > 0) {
      const std::int64_t p = xb[j + 1] - xb[j];
      const bool same = !dec.fresh[j] || (xb[j] - xb[j - 1] == p && lce(X, xb[j - 1], X, xb[j]) >= p);
      const bool inside = d <= xb[j - 1] && xb[j + 1] <= m - 3 * d;
      if (same && inside) {
        const std::int64_t l = lce(Y, xb[j - 1] - d, Y, xb[j] - d);
        if (l >= p + 4 * d) {
          const std::int64_t stop = next_fresh[j + 1];
          run = std::min({(l - 4 * d) / p, stop - j, (m - 3 * d - xb[j]) / p});
        }
      }
    }
    if (run == 0) {
      fbar.push_back(j);
      ++j;
    } else {
      j += run;
    }
  }
  if (stats) stats->fresh_bands = fbar.size(), stats->phrases = M;
  fbar.push_back(M);

  // Distances from column xb[i] to column xb[i + 1] within the band.
  auto band_matrix = [&](std::int64_t i) {
    const std::int64_t xa = xb[i], xe = xb[i + 1], ya = lo(xa);
    const SymbolString xs = detail::fetch(X, xa, xe), ys = detail::fetch(Y, ya, hi(xe));
    Matrix D(height(xa), height(xe));
    std::vector<Cost> cur, nxt;
    auto sweep = [&](std::vector<Cost>& v, std::int64_t x) {
      const std::int64_t L = lo(x), H = hi(x);
      for (std::int64_t y = L + 1; y <= H; ++y)
        v[y - L] = std::min(v[y - L], cadd(v[y - 1 - L], capped(w.ins(ys[y - 1 - ya]))));
      for (std::int64_t y = H - 1; y >= L; --y) v[y - L] = std::min(v[y - L], cadd(v[y + 1 - L], big));
    };
    for (std::int64_t s = 0; s < D.rows; ++s) {
      cur.assign(D.rows, kInf);
      cur[s] = 0;
      sweep(cur, xa);
      for (std::int64_t x = xa; x < xe; ++x) {
        const std::int64_t L0 = lo(x), H0 = hi(x), L1 = lo(x + 1), H1 = hi(x + 1);
        const Sym a = xs[x - xa];
        const Cost del = capped(w.del(a));
        nxt.assign(H1 - L1 + 1, kInf);
        for (std::int64_t y = L1; y <= H1; ++y) {
          Cost c = kInf;
          if (y - 1 >= L0 && y - 1 <= H0) c = cadd(cur[y - 1 - L0], capped(w.sub(a, ys[y - 1 - ya])));
          if (y >= L0 && y <= H0) c = std::min(c, cadd(cur[y - L0], del));
          nxt[y - L1] = c;
        }
        sweep(nxt, x + 1);
        std::swap(cur, nxt);
      }
      std::copy(cur.begin(), cur.end(), D.a.begin() + s * D.cols);
    }
    return D;
  };

  struct Run {
    std::int64_t i, e;
    PowerTable pt;
  };
  std::vector<Run> runs;
  std::vector<Matrix> pref;  // pref[t]: distances from column 0 to column xb[fbar[t + 1]]
  for (std::size_t t = 0; t + 1 < fbar.size(); ++t) {
    Run r{fbar[t], fbar[t + 1] - fbar[t], {}};
    Matrix D = band_matrix(r.i);
    if (r.e == 1) r.pt.pow.emplace(1, std::move(D));
    else r.pt = monge_power_table(D, r.e);
    const Matrix& De = r.pt[r.e];
    pref.push_back(pref.empty() ? De : monge_minplus(pref.back(), De));
    runs.push_back(std::move(r));
  }

  const Matrix& Dn = pref.back();
  const auto corners = detail::pick_corners(Dn, m - lo(n), cap);
  FourWayResult res;
  Witnessed* slots[4] = {&res.full, &res.suffix_free, &res.prefix_free, &res.substring};

  auto recover = [&](std::int64_t a, std::int64_t b) {
    const std::size_t R = runs.size();
    std::vector<std::int64_t> vs(R + 1);
    vs[0] = a, vs[R] = b;
    for (std::size_t t = R - 1; t >= 1; --t) {
      const Matrix& Pe = runs[t].pt[runs[t].e];
      const Matrix& A = pref[t - 1];
      vs[t] = detail::leftmost_argmin(A.cols, [&](std::int64_t v) { return cadd(A(a, v), Pe(v, vs[t + 1])); });
    }
    Alignment out;
    auto point = [&](std::int64_t i, std::int64_t v) { return Point{xb[i], lo(xb[i]) + v}; };
    auto rec = [&](auto&& self, const Run& run, std::int64_t ip, std::int64_t jp, std::int64_t u,
                   std::int64_t v) -> void {
      const std::int64_t L = jp - ip;
      const Point pu = point(ip, u), pv = point(jp, v);
      if (run.pt[L](u, v) == 0) {
        append(out, detail::diagonal(pu, pv));
      } else if (L == 1) {
        const SymbolString xs = detail::fetch(X, pu.x, pv.x), ys = detail::fetch(Y, pu.y, pv.y);
        auto admit = [&](std::int64_t x, std::int64_t y) { return lo(x) <= y && y <= hi(x); };
        append(out, detail::local_path({&xs, pu.x}, {&ys, pu.y}, w, pu, pv, admit));
      } else {
        const std::int64_t kp = (ip + jp) / 2;
        const Matrix &A = run.pt[kp - ip], &B = run.pt[jp - kp];
        const std::int64_t mid =
            detail::leftmost_argmin(A.cols, [&](std::int64_t t) { return cadd(A(u, t), B(t, v)); });
        self(self, run, ip, kp, u, mid);
        self(self, run, kp, jp, mid, v);
      }
    };
    for (std::size_t t = 0; t < R; ++t) rec(rec, runs[t], runs[t].i, runs[t].i + runs[t].e, vs[t], vs[t + 1]);
    return canonical(X, Y, out);
  };

  for (int q = 0; q < 4; ++q) {
    if (is_inf(corners[q].cost) || (only >= 0 && q != only)) continue;
    slots[q]->cost = corners[q].cost;
    if (want_witness) slots[q]->alignment = recover(corners[q].row, corners[q].col);
  }
  return res;
}

// Standard engine: decompositions of X and Y, relevant boxes with boundary matrices shared
// between isomorphic boxes, and a lexicographic sweep of min-plus vector products.
inline FourWayResult solve_standard(const View& X, const View& Y, const WeightFn& w, std::int64_t d, std::int64_t k,
                                    const BandOptions& opt = {}) {
  const bool want_witness = opt.want_witness;
  BandStats* stats = opt.stats;
  const int only = opt.only;
  if (k < 1) throw std::invalid_argument("solve_standard needs k >= 1");
  if (auto r = detail::band_prelude(X, Y, w, d, want_witness)) return *r;
  const std::int64_t n = X.size(), m = Y.size();
  const Cost cap = w.units(d), big = w.units(d + 1);
  FourWayResult res;

  const double nn = static_cast<double>(std::max(n, m));
  const double lg = std::ceil(std::log2(std::max(nn, 2.0)));
  std::int64_t ell = static_cast<std::int64_t>(std::ceil(std::sqrt(nn * d) / (k * std::sqrt(lg))));
  ell = std::max<std::int64_t>(1, std::min(ell, d));
  if (opt.ell > 0) ell = opt.ell;
  if (stats) stats->ell = ell;
  if (ell == 1) return detail::band_dp_four_way(X, Y, w, d, want_witness, only);

  std::vector<std::int64_t> xb, yb, cx, cy;
  auto classes = [](const PhraseDecomposition& dec) {
    std::vector<std::int64_t> c(dec.phrases());
    for (std::int64_t i = 0; i < dec.phrases(); ++i) c[i] = dec.fresh[i] ? i : c[dec.source[i]];
    return c;
  };
  if (ell == 1) {
    for (std::int64_t i = 0; i <= n; ++i) xb.push_back(i);
    for (std::int64_t j = 0; j <= m; ++j) yb.push_back(j);
    for (std::int64_t i = 0; i < n; ++i) cx.push_back(X[i]);
    for (std::int64_t j = 0; j < m; ++j) cy.push_back(Y[j]);
  } else {
    PhraseDecomposition dx = decompose_std(X, k, ell), dy;
    if (m < 2 * ell) {
      dy = decompose_std(Y, 10 * k, ell);
    } else {
      auto sy = selfed_bounded(Y, 10 * k, true);
      if (!sy.within()) return res;
      dy = detail::decompose_std_scan(Y, detail::SelfAlignmentWalk(sy.alignment->bp), 10 * k, ell);
    }
    xb = dx.x, yb = dy.x, cx = classes(dx), cy = classes(dy);
  }
  const std::int64_t mx = xb.size() - 1, my = yb.size() - 1;

  struct Box {
    std::int64_t i, j, mat;
  };
  std::vector<Box> boxes;
  std::map<std::pair<std::int64_t, std::int64_t>, std::int64_t> memo;
  std::vector<BoundaryMatrix> mats;
  for (std::int64_t i = 0; i < mx; ++i) {
    // relevant iff y_j <= x_{i+1} + 3d and y_{j+1} >= x_i - d
    std::int64_t j = std::upper_bound(yb.begin() + 1, yb.end(), xb[i] - d - 1) - yb.begin() - 1;
    for (; j < my && yb[j] <= xb[i + 1] + 3 * d; ++j) {
      auto key = std::make_pair(cx[i], cy[j]);
      auto it = memo.find(key);
      if (it == memo.end()) {
        const SymbolString xs = detail::fetch(X, xb[i], xb[i + 1]), ys = detail::fetch(Y, yb[j], yb[j + 1]);
        mats.push_back(box_boundary_matrix(xs, ys, w, big));
        it = memo.emplace(key, mats.size() - 1).first;
      }
      boxes.push_back({i, j, it->second});
    }
  }
  if (stats) stats->relevant_boxes = boxes.size(), stats->classes = mats.size();

  struct Entry {
    Cost dist = kInf;
    std::int64_t box = -1, in = -1;
  };
  struct Line {
    std::int64_t lo = std::numeric_limits<std::int64_t>::max(), hi = -1;
    std::vector<Entry> e;
    Entry* at(std::int64_t v) { return v < lo || v > hi ? nullptr : &e[v - lo]; }
  };
  std::vector<Line> xl(mx + 1), yl(my + 1);
  auto extend = [](Line& l, std::int64_t a, std::int64_t b) { l.lo = std::min(l.lo, a), l.hi = std::max(l.hi, b); };
  for (const Box& b : boxes) {
    extend(xl[b.i], yb[b.j], yb[b.j + 1]);
    extend(xl[b.i + 1], yb[b.j], yb[b.j + 1]);
    extend(yl[b.j], xb[b.i], xb[b.i + 1]);
    extend(yl[b.j + 1], xb[b.i], xb[b.i + 1]);
  }
  extend(xl[0], 0, 0);
  extend(yl[0], 0, 0);

  auto input_entry = [&](const Box& b, std::int64_t t) -> Entry* {
    const Point p = mats[b.mat].in[t];
    const std::int64_t H = yb[b.j + 1] - yb[b.j];
    return t <= H ? xl[b.i].at(yb[b.j] + p.y) : yl[b.j].at(xb[b.i] + p.x);
  };

  auto sweep = [&](bool free_start) {
    for (auto& l : xl) l.e.assign(std::max<std::int64_t>(0, l.hi - l.lo + 1), Entry{});
    for (auto& l : yl) l.e.assign(std::max<std::int64_t>(0, l.hi - l.lo + 1), Entry{});
    xl[0].at(0)->dist = 0;
    yl[0].at(0)->dist = 0;
    if (free_start)
      for (std::int64_t y = 0; y <= std::min(m, 3 * d); ++y)
        if (Entry* e = xl[0].at(y)) e->dist = 0;
    std::vector<Cost> v;
    std::vector<std::int64_t> arg;
    for (std::size_t bi = 0; bi < boxes.size(); ++bi) {
      const Box& b = boxes[bi];
      const BoundaryMatrix& B = mats[b.mat];
      v.assign(B.in.size(), kInf);
      bool any = false;
      for (std::size_t t = 0; t < B.in.size(); ++t)
        if (Entry* e = input_entry(b, t)) v[t] = e->dist, any |= !is_inf(e->dist);
      if (!any) continue;
      const std::vector<Cost> out = vec_minplus(v, B.m, &arg);
      const std::int64_t H = yb[b.j + 1] - yb[b.j];
      for (std::size_t t = 0; t < B.out.size(); ++t) {
        if (out[t] > cap) continue;
        const Point g{xb[b.i] + B.out[t].x, yb[b.j] + B.out[t].y};
        const Entry val{out[t], static_cast<std::int64_t>(bi), arg[t]};
        auto put = [&](Entry* e) {
          if (e && val.dist < e->dist) *e = val;
        };
        if (B.out[t].y == H) put(yl[b.j + 1].at(g.x));
        if (B.out[t].y == 0) put(yl[b.j].at(g.x));
        if (g.x == xb[b.i]) put(xl[b.i].at(g.y));
        if (g.x == xb[b.i + 1]) put(xl[b.i + 1].at(g.y));
      }
    }
  };

  auto recover = [&](std::int64_t q) {
    std::vector<Alignment> segs;
    Point g{n, q};
    Entry e = *xl[mx].at(q);
    while (e.box >= 0) {
      const Box& b = boxes[e.box];
      const Point ul = mats[b.mat].in[e.in];
      const Point u{xb[b.i] + ul.x, yb[b.j] + ul.y};
      const Entry eu = *input_entry(b, e.in);
      if (eu.dist == e.dist) {
        segs.push_back(detail::diagonal(u, g));
      } else {
        const SymbolString xs = detail::fetch(X, u.x, g.x), ys = detail::fetch(Y, u.y, g.y);
        segs.push_back(detail::local_path({&xs, u.x}, {&ys, u.y}, w, u, g,
                                          [](std::int64_t, std::int64_t) { return true; }));
      }
      g = u, e = eu;
    }
    if (g.x != 0 || e.dist != 0) throw std::logic_error("backtracking did not reach a start vertex");
    Alignment out{{g}};
    for (auto it = segs.rbegin(); it != segs.rend(); ++it) append(out, *it);
    return canonical(X, Y, out);
  };

  auto finish = [&](Witnessed& whole, Witnessed& open_end) {
    Line& last = xl[mx];
    if (Entry* e = last.at(m); e && e->dist <= cap) {
      whole.cost = e->dist;
      if (want_witness) whole.alignment = recover(m);
    }
    std::int64_t bq = -1;
    for (std::int64_t q = last.lo; q <= last.hi; ++q)
      if (last.at(q)->dist <= cap && (bq < 0 || last.at(q)->dist < last.at(bq)->dist)) bq = q;
    if (bq >= 0) {
      open_end.cost = last.at(bq)->dist;
      if (want_witness) open_end.alignment = recover(bq);
    }
  };
  if (only < 0 || only == 0 || only == 2) {
    sweep(false);
    finish(res.full, res.prefix_free);
  }
  if (only < 0 || only == 1 || only == 3) {
    sweep(true);
    finish(res.suffix_free, res.substring);
  }
  return res;
}

}  // namespace wed
