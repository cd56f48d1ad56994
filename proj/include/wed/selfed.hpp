#pragma once

#include <optional>

#include "wed/core.hpp"
#include "wed/pillar.hpp"

namespace wed {

struct BoundedResult {
  std::int64_t dist = -1;  // -1 when the distance exceeds the bound
  std::optional<Alignment> alignment;
  bool within() const { return dist >= 0; }
};

inline std::int64_t lce(const View& a, std::int64_t i, const View& b, std::int64_t j) {
  return a.ix->extend(a.f.sid, a.f.b + i, b.f.sid, b.f.b + j, std::min(a.size() - i, b.size() - j));
}

namespace detail {

// Landau-Vishkin over diagonals [ilo, ihi] (diagonal = y - x) of AG(X, Y).
// With self_mode, edges on diagonal 0 are never taken.
inline BoundedResult landau_vishkin(const View& X, const View& Y, std::int64_t k, std::int64_t ilo,
                                    std::int64_t ihi, bool self_mode, bool want_witness) {
  BoundedResult res;
  const std::int64_t n = X.size(), m = Y.size();
  const std::int64_t target = m - n;
  if (k < 0 || target < ilo || target > ihi) return res;
  const std::int64_t W = ihi - ilo + 1;
  constexpr std::int64_t kNone = -1;
  enum : char { kCarry, kSub, kDel, kIns, kStart };
  struct Cell {
    std::int64_t xs, xe;
    char move;
  };
  std::vector<Cell> cells;
  std::vector<std::int64_t> prev(W, kNone), cur(W, kNone);
  auto slide = [&](std::int64_t i, std::int64_t x) {
    if (self_mode && i == 0) return x;
    const std::int64_t lim = std::min(n - x, m - x - i);
    if (lim <= 0) return x;
    return x + X.ix->extend(X.f.sid, X.f.b + x, Y.f.sid, Y.f.b + x + i, lim);
  };
  auto finish = [&](std::int64_t j) {
    res.dist = j;
    if (!want_witness) return;
    std::vector<Point> bps{{n, m}};
    std::int64_t i = target;
    for (std::int64_t t = j; t >= 0; --t) {
      const Cell& c = cells[t * W + (i - ilo)];
      switch (c.move) {
        case kSub: bps.push_back({c.xs - 1, c.xs - 1 + i}); break;
        case kDel: bps.push_back({c.xs - 1, c.xs + i}); ++i; break;
        case kIns: bps.push_back({c.xs, c.xs + i - 1}); --i; break;
        default: break;
      }
    }
    if (!(bps.back() == Point{0, 0})) bps.push_back({0, 0});
    std::reverse(bps.begin(), bps.end());
    Alignment a;
    for (const Point& p : bps)
      if (a.bp.empty() || !(a.bp.back() == p)) a.bp.push_back(p);
    res.alignment = a;
  };
  if (0 >= ilo && 0 <= ihi) {
    cur[-ilo] = slide(0, 0);
    if (want_witness) {
      cells.assign(W, Cell{kNone, kNone, kCarry});
      cells[-ilo] = {0, cur[-ilo], kStart};
    }
  }
  if (target >= ilo && cur[target - ilo] >= n) {
    finish(0);
    return res;
  }
  for (std::int64_t j = 1; j <= k; ++j) {
    std::swap(prev, cur);
    std::fill(cur.begin(), cur.end(), kNone);
    if (want_witness) cells.resize((j + 1) * W, Cell{kNone, kNone, kCarry});
    // diagonals that are reachable by now and can still reach the target
    const std::int64_t lo = std::max({ilo, -j, target - (k - j)});
    const std::int64_t hi = std::min({ihi, j, target + (k - j)});
    for (std::int64_t i = lo; i <= hi; ++i) {
      const std::int64_t s = i - ilo;
      std::int64_t best = prev[s], xs = prev[s];
      char mv = kCarry;
      auto offer = [&](std::int64_t x, char how) {
        if (x < 0 || x > n || x + i < 0 || x + i > m) return;
        if (x > best) best = x, xs = x, mv = how;
      };
      if (prev[s] != kNone && !(self_mode && i == 0)) offer(prev[s] + 1, kSub);
      if (s + 1 < W && prev[s + 1] != kNone) offer(prev[s + 1] + 1, kDel);
      if (s > 0 && prev[s - 1] != kNone) offer(prev[s - 1], kIns);
      if (mv != kCarry) best = slide(i, best);
      cur[s] = best;
      if (want_witness) cells[j * W + s] = {xs, best, mv};
    }
    if (cur[target - ilo] >= n) {
      finish(j);
      return res;
    }
  }
  return res;
}

// One wave pass of self_reach; ext(x, i, lim) extends a match on diagonal i from x.
template <class Ext>
std::int64_t self_reach_waves(std::int64_t n, std::int64_t k, Ext ext) {
  const std::int64_t ilo = std::max(-k, -n), W = 1 - ilo;
  // Entries left over from earlier waves stay valid: they are reachable with fewer edits.
  const std::int64_t kNone = -4 * n - 8;
  std::vector<std::int64_t> buf(2 * (W + 2), kNone);
  std::int64_t* prev = buf.data() + 1;
  std::int64_t* cur = buf.data() + W + 3;
  cur[W - 1] = 0;
  for (std::int64_t j = 1; j <= k && cur[W - 1] < n; ++j) {
    std::swap(prev, cur);
    const std::int64_t lo = std::max({ilo, -j, -(k - j)});
    for (std::int64_t i = lo; i < 0; ++i) {
      const std::int64_t s = i - ilo;
      const std::int64_t was = prev[s];
      std::int64_t best = std::max(was, prev[s + 1]) + 1;
      if (prev[s - 1] > best) best = prev[s - 1];
      if (best > n) best = n;
      if (best + i < 0) best = was;
      if (best > was && best < n) best += ext(best, i, n - best);
      cur[s] = best > was ? best : was;
    }
    cur[W - 1] = std::max(prev[W - 1], std::min(prev[W - 2], n));
  }
  return std::max<std::int64_t>(0, std::min(cur[W - 1], n));
}

// Furthest x such that (x, x) is reachable from (0, 0) in AG(X, X) with at most k unit edits
// while avoiding diagonal-0 edges and staying in y <= x. With reverse, X is read back to front.
inline std::int64_t self_reach(const View& X, std::int64_t k, bool reverse) {
  const std::int64_t n = X.size();
  if (n == 0 || k < 0) return 0;
  k = std::min(k, 2 * n);
  const PillarIndex& ix = *X.ix;
  const int sid = X.f.sid;
  const std::int64_t fb = X.f.b, fe = X.f.e;
  if (ix.backend() != LceBackend::Direct) {
    if (reverse)
      return self_reach_waves(n, k, [&](std::int64_t x, std::int64_t i, std::int64_t lim) {
        return ix.extend_back(sid, fe - x, sid, fe - x - i, lim);
      });
    return self_reach_waves(n, k, [&](std::int64_t x, std::int64_t i, std::int64_t lim) {
      return ix.extend(sid, fb + x, sid, fb + x + i, lim);
    });
  }
  std::uint64_t scans = 0;
  // Symbols at distance < avail from the start (in reading direction) are addressable, so the
  // first four comparisons can be done without branching whenever x + 4 <= avail.
  const std::int64_t avail = reverse ? fe : static_cast<std::int64_t>(ix.str(sid).size()) - fb;
  auto scan = [&](auto at) {
    return self_reach_waves(n, k, [&](std::int64_t x, std::int64_t i, std::int64_t lim) {
      ++scans;
      std::int64_t l = 0;
      if (x + 4 <= avail) {
        const std::int64_t e0 = at(x) == at(x + i);
        const std::int64_t e1 = e0 & (at(x + 1) == at(x + i + 1));
        const std::int64_t e2 = e1 & (at(x + 2) == at(x + i + 2));
        const std::int64_t e3 = e2 & (at(x + 3) == at(x + i + 3));
        l = e0 + e1 + e2 + e3;
        if (l < 4) return std::min(l, lim);
      }
      while (l < lim && at(x + l) == at(x + i + l)) ++l;
      return l;
    });
  };
  std::int64_t r;
  if (reverse) {
    const Sym* end = ix.data(sid) + fe - 1;
    r = scan([end](std::int64_t t) { return end[-t]; });
  } else {
    const Sym* begin = ix.data(sid) + fb;
    r = scan([begin](std::int64_t t) { return begin[t]; });
  }
  (reverse ? ix.stats.lcs : ix.stats.lcp) += scans;
  return r;
}

}  // namespace detail

// Unit edit distance with witness, or dist = -1 when it exceeds k.
inline BoundedResult ed_bounded(const View& X, const View& Y, std::int64_t k, bool want_witness = true) {
  const std::int64_t n = X.size(), m = Y.size();
  if (k < 0) return {};
  k = std::min(k, n + m);
  return detail::landau_vishkin(X, Y, k, std::max(-k, -n), std::min(k, m), false, want_witness);
}

// Self-edit distance; the witness stays on the side of the main diagonal where y <= x.
inline BoundedResult selfed_bounded(const View& X, std::int64_t k, bool want_witness = true) {
  const std::int64_t n = X.size();
  if (k < 0) return {};
  k = std::min(k, 2 * n);
  return detail::landau_vishkin(X, X, k, std::max(-k, -n), 0, true, want_witness);
}

}  // namespace wed
