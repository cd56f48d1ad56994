#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "wed/core.hpp"
#include "wed/monge.hpp"

namespace wed {

struct HardgenError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void check_entries(const Matrix& M, Cost E, const char* name) {
  for (Cost v : M.a)
    if (v < -E || v > E) throw HardgenError(std::string("entry of ") + name + " outside [-E, E]");
}

// a * b, refusing anything that would reach the infinity sentinel
inline Cost checked_mul(Cost a, Cost b) {
  const __int128 p = static_cast<__int128>(a) * b;
  if (p >= kInf / 64) throw HardgenError("instance too large for 64-bit costs");
  return static_cast<Cost>(p);
}

}  // namespace detail

// Scales with E << D << I << F, where a << b means a * (|X| + |Y|) < b.
struct ScaleChain {
  Cost E = 0, D = 0, I = 0, F = 0, K = 0;

  static ScaleChain make(Cost E, std::int64_t x_len, std::int64_t y_len) {
    ScaleChain s;
    const Cost L = x_len + y_len + 1;
    s.E = E;
    s.D = detail::checked_mul(E, L) + 1;
    s.I = detail::checked_mul(s.D, L) + 1;
    s.F = detail::checked_mul(s.I, L) + 1;
    s.K = detail::checked_mul(s.F, x_len + y_len);
    detail::checked_mul(s.K, 4 * (x_len + y_len));
    return s;
  }
};

// Min-plus product of A (p x q) and B (q x r) encoded as a batch X_0..X_{r-1} against Y.
struct TwoMatrixGadget {
  std::int64_t p = 0, q = 0, r = 0;
  ScaleChain scale;
  std::vector<SymbolString> X;
  SymbolString Y;
  WeightFn w;

  // wed(X_l[i, |X_l| - i), Y) by the closed form
  Cost predicted(const Matrix& A, const Matrix& B, std::int64_t l, std::int64_t i) const {
    Cost best = kInf;
    for (std::int64_t j = 0; j < q; ++j) best = std::min(best, A(i, j) + B(j, l));
    return static_cast<Cost>(Y.size()) * scale.F + (p - i) * (q + 1) * scale.D + best;
  }
};

inline TwoMatrixGadget gen_two_matrix_gadget(const Matrix& A, const Matrix& B, Cost E) {
  if (E < 1) throw HardgenError("E must be positive");
  if (A.rows < 1 || A.cols < 1 || B.cols < 1) throw HardgenError("matrices must be nonempty");
  if (A.cols != B.rows) throw HardgenError("A has q columns but B does not have q rows");
  detail::check_entries(A, E, "A");
  detail::check_entries(B, E, "B");
  TwoMatrixGadget g;
  const std::int64_t p = A.rows, q = A.cols, r = B.cols;
  g.p = p, g.q = q, g.r = r;
  // x_0..x_{p-1}, x_p^(0..r-1), x_{p+1}..x_{2p}, then y_0..y_{2p+q-1}
  auto xs = [&](std::int64_t t) { return static_cast<Sym>(t <= p - 1 ? t : t + r - 1); };
  auto sel = [&](std::int64_t l) { return static_cast<Sym>(p + l); };
  const std::int64_t nx = 2 * p + r, ny = 2 * p + q;
  auto ys = [&](std::int64_t c) { return static_cast<Sym>(nx + c); };
  g.scale = ScaleChain::make(E, 2 * p + 1, ny);
  const Cost D = g.scale.D, F = g.scale.F;
  g.w = WeightFn(nx + ny, 1);
  const Sym eps = g.w.eps();
  for (Sym a = 0; a <= eps; ++a)
    for (Sym b = 0; b <= eps; ++b) g.w.set(a, b, a == b ? 0 : a == eps || b == eps ? F : 2 * F);
  auto a_at = [&](std::int64_t i, std::int64_t j) { return i == p ? Cost{0} : A(i, j); };
  for (std::int64_t i = 0; i < p; ++i)
    for (std::int64_t j = 0; j < q; ++j) g.w.set(xs(i), ys(i + j), F + a_at(i, j) - a_at(i + 1, j) + (q - j) * D);
  for (std::int64_t l = 0; l < r; ++l)
    for (std::int64_t j = 0; j < q; ++j) g.w.set(sel(l), ys(p + j), F + B(j, l));
  for (std::int64_t i = 1; i <= p; ++i)
    for (std::int64_t j = 0; j < q; ++j) g.w.set(xs(p + i), ys(p + i + j), F + (j + 1) * D);
  for (std::int64_t l = 0; l < r; ++l) {
    SymbolString s;
    for (std::int64_t t = 0; t < p; ++t) s.push_back(xs(t));
    s.push_back(sel(l));
    for (std::int64_t t = p + 1; t <= 2 * p; ++t) s.push_back(xs(t));
    g.X.push_back(std::move(s));
  }
  for (std::int64_t c = 0; c < ny; ++c) g.Y.push_back(ys(c));
  return g;
}

struct GadgetParams {
  Matrix A, B, C;  // p x q, q x r, r x p
  std::int64_t tau = 1;
  Cost E = 1;

  std::int64_t p() const { return A.rows; }
  std::int64_t q() const { return A.cols; }
  std::int64_t r() const { return B.cols; }
  std::int64_t p_tau() const { return (p() + tau - 1) / tau; }
};

struct BatchInstance {
  WeightFn w;
  std::vector<SymbolString> X;
  SymbolString Y;
  Cost k = 0;
  // (l, i) per string; (-1, -1) marks a dummy
  std::vector<std::pair<std::int64_t, std::int64_t>> label;
  // per symbol: true for symbols of the X side
  std::vector<char> x_side;
  ScaleChain scale;
  std::int64_t p_tau = 0;
};

namespace detail {

inline void validate(const GadgetParams& g) {
  if (g.E < 1) throw HardgenError("E must be positive");
  if (g.p() < 1 || g.q() < 1 || g.r() < 1) throw HardgenError("matrices must be nonempty");
  if (g.B.rows != g.q()) throw HardgenError("B must have q rows");
  if (g.C.rows != g.r() || g.C.cols != g.p()) throw HardgenError("C must be r x p");
  if (g.tau < 1 || g.tau > g.p()) throw HardgenError("tau must lie in [1, p]");
  check_entries(g.A, g.E, "A");
  check_entries(g.B, g.E, "B");
  check_entries(g.C, g.E, "C");
}

// Row of A (and column of C) that row t of block alpha stands for; padded rows repeat the last one.
inline std::int64_t source_row(const GadgetParams& g, std::int64_t alpha, std::int64_t t) {
  return std::min(alpha * g.p_tau() + t, g.p() - 1);
}

}  // namespace detail

inline Cost min_triangle(const Matrix& A, const Matrix& B, const Matrix& C) {
  Cost best = kInf;
  for (std::int64_t i = 0; i < A.rows; ++i)
    for (std::int64_t j = 0; j < A.cols; ++j)
      for (std::int64_t l = 0; l < B.cols; ++l) best = std::min(best, A(i, j) + B(j, l) + C(l, i));
  return best;
}

// Batch X_{l,i} (l < r, i < p_tau) with Y under the normalized weights; with dummy_budget >= 2,
// dummy strings holding '#' are interleaved so that consecutive strings differ in at most
// max(2, dummy_budget) positions.
inline BatchInstance gen_three_matrix_gadget(const GadgetParams& g, std::int64_t dummy_budget = 0) {
  detail::validate(g);
  if (dummy_budget != 0 && dummy_budget < 2) throw HardgenError("dummy budget must be 0 or at least 2");
  const std::int64_t p = g.p(), q = g.q(), r = g.r(), tau = g.tau, pt = g.p_tau();
  const std::int64_t block = 2 * pt + 2;
  const std::int64_t xlen = 1 + tau * block;
  const std::int64_t pre = (tau - 1) * block + pt;
  const std::int64_t mid = 2 * pt + q;
  const std::int64_t ylen = 2 * pre + mid;

  // X side: per block alpha the 2pt + r characters of the two-matrix gadget, then $0^(l,i),
  // $_1..$_{tau-1}, $tau^(i); Y side: prefix, Y-bullet, suffix; then '#' when dummies are on.
  const std::int64_t per_block = 2 * pt + r;
  auto xs = [&](std::int64_t a, std::int64_t t) { return static_cast<Sym>(a * per_block + (t < pt ? t : t + r - 1)); };
  auto sel = [&](std::int64_t a, std::int64_t l) { return static_cast<Sym>(a * per_block + pt + l); };
  const std::int64_t s0_base = tau * per_block;
  auto s0 = [&](std::int64_t l, std::int64_t i) { return static_cast<Sym>(s0_base + l * pt + i); };
  const std::int64_t mid_base = s0_base + r * pt;
  auto dollar = [&](std::int64_t a) { return static_cast<Sym>(mid_base + a - 1); };
  const std::int64_t st_base = mid_base + tau - 1;
  auto st = [&](std::int64_t i) { return static_cast<Sym>(st_base + i); };
  const std::int64_t x_count = st_base + pt;
  auto ypos = [&](std::int64_t c) { return static_cast<Sym>(x_count + c); };  // c indexes Y
  const bool dummies = dummy_budget > 0;
  const std::int64_t sigma = x_count + ylen + (dummies ? 1 : 0);
  const Sym hash = static_cast<Sym>(x_count + ylen);

  BatchInstance out;
  out.p_tau = pt;
  out.scale = ScaleChain::make(g.E, xlen, ylen);
  const ScaleChain& s = out.scale;
  const Cost D = s.D, I = s.I, F = s.F, K = s.K;

  // raw weight of substituting X-side symbol x by Y-side symbol y; Y-side to X-side is 2F
  std::vector<Cost> raw(x_count * ylen, 2 * F);
  auto set_raw = [&](Sym x, std::int64_t c, Cost v) { raw[x * ylen + c] = v; };
  std::vector<char> special(x_count, 0);
  for (std::int64_t l = 0; l < r; ++l)
    for (std::int64_t i = 0; i < pt; ++i) special[s0(l, i)] = 1;
  for (std::int64_t i = 0; i < pt; ++i) special[st(i)] = 1;
  for (std::int64_t x = 0; x < x_count; ++x) {
    if (special[x]) continue;
    for (std::int64_t c = 0; c < pre; ++c) set_raw(x, c, F);
    for (std::int64_t c = pre + mid; c < ylen; ++c) set_raw(x, c, F);
  }
  for (std::int64_t a = 0; a < tau; ++a) {
    auto a_at = [&](std::int64_t t, std::int64_t j) { return t == pt ? Cost{0} : g.A(detail::source_row(g, a, t), j); };
    for (std::int64_t t = 0; t < pt; ++t)
      for (std::int64_t j = 0; j < q; ++j) set_raw(xs(a, t), pre + t + j, F + a_at(t, j) - a_at(t + 1, j) + (q - j) * D);
    for (std::int64_t l = 0; l < r; ++l)
      for (std::int64_t j = 0; j < q; ++j) set_raw(sel(a, l), pre + pt + j, F + g.B(j, l));
    for (std::int64_t t = 1; t <= pt; ++t)
      for (std::int64_t j = 0; j < q; ++j) set_raw(xs(a, pt + t), pre + pt + t + j, F + (j + 1) * D);
  }
  // A decent alignment that pairs $0 with block a and $tau with block b always has b <= a, so
  // the I terms grow with a - b.
  for (std::int64_t a = 0; a < tau; ++a)
    for (std::int64_t i = 0; i < pt; ++i) {
      const std::int64_t c0 = pre - (a * block + i + 1);
      for (std::int64_t l = 0; l < r; ++l)
        set_raw(s0(l, i), c0, F + g.C(l, detail::source_row(g, a, i)) + (a + 1) * I + i * (q + 1) * D);
      set_raw(st(i), pre + mid + (tau - a - 1) * block + i, F + (tau - a) * I);
    }

  out.w = WeightFn(sigma, K);
  WeightFn& w = out.w;
  out.x_side.assign(sigma, 0);
  for (std::int64_t x = 0; x < x_count; ++x) out.x_side[x] = 1;
  if (dummies) out.x_side[hash] = 1;
  const Sym eps = w.eps();
  for (Sym a = 0; a <= eps; ++a)
    for (Sym b = 0; b <= eps; ++b) {
      Cost v;
      if (a == b) v = 0;
      else if (dummies && (a == hash || b == hash)) v = 2 * K;
      else {
        const bool ax = a != eps && out.x_side[a], bx = b != eps && out.x_side[b];
        const bool ay = a != eps && !ax, by = b != eps && !bx;
        if (ax && by) v = K + raw[a * ylen + (b - x_count)];
        else if (ay && bx) v = K + raw[b * ylen + (a - x_count)];
        else if (ay || by) v = 2 * K;
        else v = K;
      }
      w.set(a, b, v);
    }

  for (std::int64_t c = 0; c < ylen; ++c) out.Y.push_back(ypos(c));
  auto make_x = [&](std::int64_t l, std::int64_t i) {
    SymbolString x{s0(l, i)};
    for (std::int64_t a = 0; a < tau; ++a) {
      if (a > 0) x.push_back(dollar(a));
      for (std::int64_t t = 0; t < pt; ++t) x.push_back(xs(a, t));
      x.push_back(sel(a, l));
      for (std::int64_t t = pt + 1; t <= 2 * pt; ++t) x.push_back(xs(a, t));
    }
    x.push_back(st(i));
    return x;
  };
  for (std::int64_t l = 0; l < r; ++l) {
    if (dummies && l > 0) {
      SymbolString cur = out.X.back();
      std::int64_t acc = 0;
      auto step = [&](std::int64_t size, auto apply) {
        if (acc + size > dummy_budget) {
          out.X.push_back(cur);
          out.label.push_back({-1, -1});
          acc = 0;
        }
        apply();
        acc += size;
      };
      step(2, [&] { cur.front() = hash, cur.back() = hash; });
      for (std::int64_t a = 0; a < tau; ++a) step(1, [&] { cur[1 + a * block + pt] = sel(a, l); });
      // the last group restores both ends and yields X_{l,0}, emitted below
      step(2, [&] {});
    }
    for (std::int64_t i = 0; i < pt; ++i) {
      out.X.push_back(make_x(l, i));
      out.label.push_back({l, i});
    }
  }
  out.k = (2 * ylen - xlen) * K + xlen * F + (tau + 1) * I + pt * (q + 1) * D;
  return out;
}

// The closed form for wed(X_{l,i}, Y) under the normalized weights, over w.denominator().
inline Cost predicted_distance(const GadgetParams& g, const BatchInstance& b, std::int64_t l, std::int64_t i) {
  if (l < 0 || l >= g.r() || i < 0 || i >= b.p_tau) throw HardgenError("(l, i) outside the batch");
  Cost best = kInf;
  for (std::int64_t a = 0; a < g.tau; ++a) {
    const std::int64_t row = detail::source_row(g, a, i);
    for (std::int64_t j = 0; j < g.q(); ++j) best = std::min(best, g.A(row, j) + g.B(j, l) + g.C(l, row));
  }
  const std::int64_t xlen = b.X.front().size(), ylen = b.Y.size();
  const ScaleChain& s = b.scale;
  return (2 * ylen - xlen) * s.K + xlen * s.F + (g.tau + 1) * s.I + b.p_tau * (g.q() + 1) * s.D + best;
}

struct CombinedInstance {
  SymbolString X, Y;
  WeightFn w;
  Cost k = 0;
  std::int64_t h = 0, r = 0, m = 0;
  Sym bottom = 0, diamond = 0;
  std::vector<SymbolString> x_bot;  // X^bot_0 .. X^bot_m
};

inline std::int64_t hamming(const SymbolString& a, const SymbolString& b) {
  std::int64_t c = 0;
  for (std::size_t t = 0; t < a.size(); ++t) c += a[t] != b[t];
  return c;
}

// Every side condition on a batch that the combination relies on; empty when all hold.
inline std::vector<std::string> batch_violations(const BatchInstance& b) {
  std::vector<std::string> bad;
  const WeightFn& w = b.w;
  const Cost den = w.denominator();
  const std::size_t sigma = w.alphabet_size();
  if (b.X.empty()) bad.push_back("batch is empty");
  if (b.x_side.size() != sigma) bad.push_back("side labels do not cover the alphabet");
  if (!bad.empty()) return bad;
  const std::int64_t x = b.X.front().size(), y = b.Y.size();
  for (const auto& s : b.X)
    if (static_cast<std::int64_t>(s.size()) != x) {
      bad.push_back("batch strings differ in length");
      break;
    }
  if (x > y) bad.push_back("batch strings are longer than Y");
  if (!w.symmetric()) bad.push_back("weights are not symmetric");
  bool range = true, xdel = true, ydel = true, sides = true;
  for (std::size_t a = 0; a <= sigma; ++a)
    for (std::size_t c = 0; c <= sigma; ++c)
      if (a != c && (w(a, c) < den || w(a, c) > 2 * den)) range = false;
  for (std::size_t a = 0; a < sigma; ++a) {
    if (b.x_side[a] && w.del(a) != den) xdel = false;
    if (!b.x_side[a] && w.del(a) != 2 * den) ydel = false;
  }
  for (const auto& s : b.X)
    for (Sym c : s)
      if (c >= sigma || !b.x_side[c]) sides = false;
  for (Sym c : b.Y)
    if (c >= sigma || b.x_side[c]) sides = false;
  if (!range) bad.push_back("off-diagonal weights outside [1, 2]");
  if (!xdel) bad.push_back("an X-side symbol has indel weight other than 1");
  if (!ydel) bad.push_back("a Y-side symbol has indel weight other than 2");
  if (!sides) bad.push_back("batch strings and Y share symbols or use the wrong side");
  if (b.k < (2 * y - x) * den || b.k >= (2 * y - x + 1) * den) bad.push_back("threshold outside [2|Y| - x, 2|Y| - x + 1)");
  return bad;
}

inline CombinedInstance combine_batch(const BatchInstance& b) {
  if (auto bad = batch_violations(b); !bad.empty()) {
    std::string msg = "batch violates side conditions:";
    for (const auto& s : bad) msg += " [" + s + "]";
    throw HardgenError(msg);
  }
  CombinedInstance c;
  const std::vector<SymbolString>& X = b.X;
  const std::int64_t m = X.size(), x = X.front().size(), y = b.Y.size();
  std::int64_t h = 0;
  for (std::int64_t i = 0; i + 1 < m; ++i) h = std::max(h, hamming(X[i], X[i + 1]));
  const std::int64_t r = (m - 1) * (h + 4) + x + 2 * y + 1;
  c.h = h, c.r = r, c.m = m;
  const std::size_t s0 = b.w.alphabet_size();
  const Cost den = b.w.denominator();
  auto u = [&](std::int64_t t) { return static_cast<Sym>(s0 + t); };
  auto v = [&](std::int64_t t) { return static_cast<Sym>(s0 + r + t); };
  c.bottom = static_cast<Sym>(s0 + 2 * r);
  c.diamond = static_cast<Sym>(s0 + 2 * r + 1);
  c.w = WeightFn(s0 + 2 * r + 2, den);
  const Sym eps = c.w.eps(), old_eps = b.w.eps();
  auto old = [&](Sym a) { return a == eps ? old_eps : a < s0 ? a : static_cast<Sym>(-1); };
  for (Sym a = 0; a <= eps; ++a)
    for (Sym d = 0; d <= eps; ++d) {
      const Sym oa = old(a), od = old(d);
      c.w.set(a, d, a == d ? 0 : oa != static_cast<Sym>(-1) && od != static_cast<Sym>(-1) ? b.w(oa, od) : den);
    }

  auto bot = [&](const SymbolString& src, const SymbolString* next) {
    SymbolString s = src;
    std::int64_t left = h;
    if (next)
      for (std::int64_t t = 0; t < x; ++t)
        if (src[t] != (*next)[t]) s[t] = c.bottom, --left;
    for (std::int64_t t = 0; t < x && left > 0; ++t)
      if (s[t] != c.bottom) s[t] = c.bottom, --left;
    return s;
  };
  c.x_bot.push_back(bot(X[0], nullptr));
  for (std::int64_t i = 0; i + 1 < m; ++i) c.x_bot.push_back(bot(X[i], &X[i + 1]));
  c.x_bot.push_back(bot(X[m - 1], nullptr));

  auto put = [](SymbolString& dst, const SymbolString& src) { dst.insert(dst.end(), src.begin(), src.end()); };
  SymbolString U, V;
  for (std::int64_t t = 0; t < r; ++t) U.push_back(u(t)), V.push_back(v(t));
  c.X.push_back(c.diamond);
  put(c.X, X[0]);
  c.X.push_back(c.diamond);
  for (std::int64_t i = 1; i < m; ++i) {
    put(c.X, U), put(c.X, b.Y), put(c.X, V);
    c.X.push_back(c.diamond);
    put(c.X, X[i]);
    c.X.push_back(c.diamond);
  }
  put(c.Y, c.x_bot[0]);
  for (std::int64_t i = 1; i <= m; ++i) {
    put(c.Y, U);
    c.Y.push_back(c.diamond);
    put(c.Y, b.Y);
    c.Y.push_back(c.diamond);
    put(c.Y, V);
    put(c.Y, c.x_bot[i]);
  }
  c.k = ((m - 1) * (h + 4) + 2 * r + 2 * x) * den + b.k;
  return c;
}

// Complete tripartite graph on parts P, Q, R; an edge joins part index pairs (0,1), (1,2) or (2,0).
struct TripartiteGraph {
  struct Edge {
    int from_part = 0;
    std::int64_t from = 0;
    int to_part = 1;
    std::int64_t to = 0;
    Cost weight = 0;
  };
  std::int64_t p = 0, q = 0, r = 0;
  std::vector<Edge> edges;
};

struct TriangleMatrices {
  Matrix A, B, C;
};

inline TriangleMatrices triangle_to_matrices(const TripartiteGraph& g) {
  TriangleMatrices t{Matrix(g.p, g.q, kInf), Matrix(g.q, g.r, kInf), Matrix(g.r, g.p, kInf)};
  const std::int64_t size[3] = {g.p, g.q, g.r};
  for (const auto& e : g.edges) {
    int a = e.from_part, b = e.to_part;
    std::int64_t i = e.from, j = e.to;
    if (a < 0 || a > 2 || b < 0 || b > 2 || a == b) throw HardgenError("edge joins invalid parts");
    if ((a + 1) % 3 != b) std::swap(a, b), std::swap(i, j);
    if (i < 0 || i >= size[a] || j < 0 || j >= size[b]) throw HardgenError("edge endpoint out of range");
    Matrix& M = a == 0 ? t.A : a == 1 ? t.B : t.C;
    if (!is_inf(M(i, j))) throw HardgenError("duplicate edge");
    M(i, j) = e.weight;
  }
  for (const Matrix* M : {&t.A, &t.B, &t.C})
    for (Cost v : M->a)
      if (is_inf(v)) throw HardgenError("graph is missing an edge");
  return t;
}

}  // namespace wed
