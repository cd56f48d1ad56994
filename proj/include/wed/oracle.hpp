#pragma once

#include <optional>

#include "wed/core.hpp"

namespace wed {

struct DPResult {
  Cost cost = kInf;
  std::optional<Alignment> alignment;
};

namespace detail {

// Walks back through a full DP table, preferring diagonal, then horizontal, then vertical steps.
template <class SX, class SY, class Get>
Alignment backtrack(const SX& X, const SY& Y, const WeightFn& w, Point end, Point start, Get get) {
  std::vector<Point> path{end};
  Point p = end;
  while (!(p == start)) {
    const Cost cur = get(p.x, p.y);
    Point q;
    if (p.x > start.x && p.y > start.y &&
        cadd(get(p.x - 1, p.y - 1), w.sub(X[p.x - 1], Y[p.y - 1])) == cur)
      q = {p.x - 1, p.y - 1};
    else if (p.x > start.x && cadd(get(p.x - 1, p.y), w.del(X[p.x - 1])) == cur)
      q = {p.x - 1, p.y};
    else
      q = {p.x, p.y - 1};
    path.push_back(q);
    p = q;
  }
  std::reverse(path.begin(), path.end());
  return from_path(path, X, Y);
}

}  // namespace detail

template <class SX, class SY>
DPResult wed_quadratic(const SX& X, const SY& Y, const WeightFn& w, bool want_alignment = true) {
  const std::int64_t n = X.size(), m = Y.size();
  std::vector<Cost> D((n + 1) * (m + 1));
  auto at = [&](std::int64_t x, std::int64_t y) -> Cost& { return D[x * (m + 1) + y]; };
  at(0, 0) = 0;
  for (std::int64_t y = 1; y <= m; ++y) at(0, y) = cadd(at(0, y - 1), w.ins(Y[y - 1]));
  for (std::int64_t x = 1; x <= n; ++x) {
    const Sym a = X[x - 1];
    at(x, 0) = cadd(at(x - 1, 0), w.del(a));
    for (std::int64_t y = 1; y <= m; ++y) {
      const Sym b = Y[y - 1];
      Cost c = cadd(at(x - 1, y - 1), w.sub(a, b));
      c = std::min(c, cadd(at(x - 1, y), w.del(a)));
      c = std::min(c, cadd(at(x, y - 1), w.ins(b)));
      at(x, y) = c;
    }
  }
  DPResult r;
  r.cost = at(n, m);
  if (want_alignment && !is_inf(r.cost))
    r.alignment = detail::backtrack(X, Y, w, {n, m}, {0, 0},
                                    [&](std::int64_t x, std::int64_t y) { return at(x, y); });
  return r;
}

namespace detail {

// Banded DP without the normalization check; k is a cost bound in units of w's denominator.
template <class SX, class SY>
DPResult banded_dp(const SX& X, const SY& Y, const WeightFn& w, Cost k, bool want_alignment) {
  DPResult r;
  if (k < 0) return r;
  const std::int64_t n = X.size(), m = Y.size();
  const std::int64_t K = std::min<std::int64_t>(w.floor_units(k), std::max(n, m));
  if (std::abs(n - m) > K) return r;
  const std::int64_t W = 2 * K + 1;
  // cell (x, y) lives at row x, slot y - x + K
  std::vector<Cost> full;
  std::vector<Cost> prev(W, kInf), cur(W, kInf);
  if (want_alignment) full.assign((n + 1) * W, kInf);
  auto store = [&](std::int64_t x, const std::vector<Cost>& row) {
    if (want_alignment) std::copy(row.begin(), row.end(), full.begin() + x * W);
  };
  cur[K] = 0;
  for (std::int64_t y = 1; y <= std::min(m, K); ++y) cur[y + K] = cadd(cur[y - 1 + K], w.ins(Y[y - 1]));
  store(0, cur);
  for (std::int64_t x = 1; x <= n; ++x) {
    std::swap(prev, cur);
    std::fill(cur.begin(), cur.end(), kInf);
    const Sym a = X[x - 1];
    const Cost da = w.del(a);
    const std::int64_t ylo = std::max<std::int64_t>(0, x - K), yhi = std::min(m, x + K);
    for (std::int64_t y = ylo; y <= yhi; ++y) {
      const std::int64_t s = y - x + K;
      Cost c = kInf;
      if (y > 0) c = cadd(prev[s], w.sub(a, Y[y - 1]));
      if (s + 1 < W) c = std::min(c, cadd(prev[s + 1], da));
      if (y > ylo) c = std::min(c, cadd(cur[s - 1], w.ins(Y[y - 1])));
      cur[s] = c;
    }
    store(x, cur);
  }
  const Cost c = cur[m - n + K];
  if (c > k) return r;
  r.cost = c;
  if (want_alignment) {
    auto get = [&](std::int64_t x, std::int64_t y) -> Cost {
      const std::int64_t s = y - x + K;
      if (s < 0 || s >= W || y < 0 || y > m) return kInf;
      return full[x * W + s];
    };
    r.alignment = backtrack(X, Y, w, {n, m}, {0, 0}, get);
  }
  return r;
}

}  // namespace detail

// Returns wed(X, Y) when it is at most k, and kInf otherwise.
template <class SX, class SY>
DPResult wed_banded(const SX& X, const SY& Y, const WeightFn& w, Cost k, bool want_alignment = false) {
  if (!is_normalized(w)) throw std::invalid_argument("wed_banded requires a normalized weight function");
  return detail::banded_dp(X, Y, w, k, want_alignment);
}

template <class S>
std::int64_t selfed_brute(const S& X) {
  const std::int64_t n = X.size();
  std::vector<std::int64_t> prev(n + 1), cur(n + 1);
  for (std::int64_t y = 0; y <= n; ++y) prev[y] = y;
  for (std::int64_t x = 1; x <= n; ++x) {
    cur[0] = x;
    for (std::int64_t y = 1; y <= n; ++y) {
      std::int64_t c = std::min(prev[y], cur[y - 1]) + 1;
      if (x != y) c = std::min(c, prev[y - 1] + (X[x - 1] == X[y - 1] ? 0 : 1));
      cur[y] = c;
    }
    std::swap(prev, cur);
  }
  return prev[n];
}

struct FourWayCosts {
  Cost full = kInf;
  Cost suffix_free = kInf;  // min over p of wed(X, Y[p..))
  Cost prefix_free = kInf;  // min over q of wed(X, Y[0..q))
  Cost substring = kInf;    // min over p <= q of wed(X, Y[p..q))
  friend bool operator==(const FourWayCosts&, const FourWayCosts&) = default;
};

// All four quantities capped at d units, from two quadratic tables.
template <class SX, class SY>
FourWayCosts four_way_brute(const SX& X, const SY& Y, const WeightFn& w, std::int64_t d) {
  const std::int64_t n = X.size(), m = Y.size();
  auto run = [&](bool free_start) {
    std::vector<Cost> prev(m + 1), cur(m + 1);
    prev[0] = 0;
    for (std::int64_t y = 1; y <= m; ++y)
      prev[y] = free_start ? 0 : cadd(prev[y - 1], w.ins(Y[y - 1]));
    for (std::int64_t x = 1; x <= n; ++x) {
      const Sym a = X[x - 1];
      cur[0] = cadd(prev[0], w.del(a));
      for (std::int64_t y = 1; y <= m; ++y) {
        Cost c = cadd(prev[y - 1], w.sub(a, Y[y - 1]));
        c = std::min(c, cadd(prev[y], w.del(a)));
        c = std::min(c, cadd(cur[y - 1], w.ins(Y[y - 1])));
        cur[y] = c;
      }
      std::swap(prev, cur);
    }
    return prev;
  };
  auto fixed = run(false), freed = run(true);
  const Cost cap = w.units(d);
  auto lim = [&](Cost c) { return c <= cap ? c : kInf; };
  FourWayCosts r;
  r.full = lim(fixed[m]);
  r.suffix_free = lim(freed[m]);
  r.prefix_free = lim(*std::min_element(fixed.begin(), fixed.end()));
  r.substring = lim(*std::min_element(freed.begin(), freed.end()));
  return r;
}

}  // namespace wed
