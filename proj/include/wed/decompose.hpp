#pragma once

#include <stdexcept>

#include "wed/core.hpp"
#include "wed/pillar.hpp"
#include "wed/selfed.hpp"

namespace wed {

struct PhraseDecomposition {
  std::vector<std::int64_t> x;       // boundaries x_0 = 0 <= ... <= x_m = |X|
  std::vector<char> fresh;           // per phrase
  std::vector<std::int64_t> source;  // per phrase, -1 for fresh phrases
  std::int64_t len_lo = 0, len_hi = 0;

  std::int64_t phrases() const { return static_cast<std::int64_t>(x.size()) - 1; }
  std::int64_t begin(std::int64_t i) const { return x[i]; }
  std::int64_t end(std::int64_t i) const { return x[i + 1]; }
  std::int64_t length(std::int64_t i) const { return x[i + 1] - x[i]; }
  std::int64_t fresh_count() const {
    std::int64_t c = 0;
    for (char f : fresh) c += f;
    return c;
  }
};

struct DecompositionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

// Queries on a breakpoint list of a self-alignment X -> X.
class SelfAlignmentWalk {
 public:
  explicit SelfAlignmentWalk(std::vector<Point> bp) : bp_(std::move(bp)) {}

  // Smallest y with (x, y) on the alignment, and the length of the run of matches leaving it.
  std::pair<std::int64_t, std::int64_t> at(std::int64_t x) const {
    if (x == bp_.front().x) return {bp_.front().y, 0};
    auto it = std::lower_bound(bp_.begin() + 1, bp_.end(), x,
                               [](const Point& p, std::int64_t v) { return p.x < v; });
    const Point q = *it;
    const std::int64_t y = q.y - (q.x - x);
    if (q.x == x) return {y, 0};
    return {y, q.x - x};
  }

 private:
  std::vector<Point> bp_;
};

inline SelfAlignmentWalk self_alignment(const View& X, std::int64_t k) {
  auto r = selfed_bounded(X, k, true);
  if (!r.within()) throw DecompositionError("self-edit distance exceeds the given bound");
  return SelfAlignmentWalk(r.alignment->bp);
}

}  // namespace detail

inline PhraseDecomposition decompose_pillar(const View& X, std::int64_t k) {
  if (k < 1) throw std::invalid_argument("decompose_pillar needs k >= 1");
  const std::int64_t n = X.size();
  PhraseDecomposition d;
  d.len_lo = k, d.len_hi = 2 * k;
  if (n < 2 * k) {
    d.x = {0, n};
    d.fresh = {1};
    d.source = {-1};
    return d;
  }
  auto walk = detail::self_alignment(X, k);
  std::vector<std::int64_t>& x = d.x;
  std::vector<char> fresh;
  auto mark = [&](std::int64_t i) {
    if (static_cast<std::int64_t>(fresh.size()) <= i) fresh.resize(i + 1, 0);
    fresh[i] = 1;
  };
  x = {0};
  std::int64_t i = 0;
  while (x[i] < n) {
    if (i > 0 && n - x[i - 1] < 2 * k) {
      x[i] = n;
      mark(i - 1);
    } else if (n - x[i] < 2 * k) {
      x.push_back(n);
      x[i] = (x[i - 1] + n) / 2;
      mark(i - 1), mark(i);
      ++i;
    } else {
      auto [y, run] = walk.at(x[i]);
      if (run < 2 * k - 1) {
        x.push_back(x[i] + 2 * k - 1);
        mark(i);
        ++i;
      } else {
        const std::int64_t s = x[i] - y;
        const std::int64_t p = s * ((k + s - 1) / s);
        const std::int64_t l = std::min(run, lce(X, x[i], X, y));
        const std::int64_t r = l / p;
        if (r < 1) throw DecompositionError("periodic step made no progress");
        for (std::int64_t q = 1; q <= r; ++q) x.push_back(x[i] + p * q);
        mark(i);
        i += r;
      }
    }
  }
  const std::int64_t m = d.phrases();
  fresh.resize(m, 0);
  d.fresh = fresh;
  d.source.assign(m, -1);
  for (std::int64_t j = 0; j < m; ++j)
    if (!d.fresh[j]) d.source[j] = j - 1;
  return d;
}

namespace detail {

inline PhraseDecomposition decompose_std_scan(const View& X, const SelfAlignmentWalk& walk, std::int64_t k,
                                              std::int64_t l) {
  const std::int64_t n = X.size();
  PhraseDecomposition d;
  d.len_lo = l, d.len_hi = 2 * l;
  std::vector<std::int64_t>& x = d.x;
  std::vector<std::int64_t> cand;
  auto set_cand = [&](std::int64_t i, std::int64_t c) {
    if (static_cast<std::int64_t>(cand.size()) <= i) cand.resize(i + 1, -1);
    cand[i] = c;
  };
  x = {0};
  std::int64_t i = 0;
  while (x[i] < n) {
    if (i > 0 && n - x[i - 1] < 2 * l) {
      x[i] = n;
      continue;
    }
    if (n - x[i] < 2 * l) {
      x.push_back(n);
      x[i] = (x[i - 1] + n) / 2;
      set_cand(i, -1);
      ++i;
      continue;
    }
    auto [y, run] = walk.at(x[i]);
    const std::int64_t s = x[i] - y;
    if (run < 2 * l - 1) {
      x.push_back(x[i] + 2 * l - 1);
      set_cand(i, -1);
      ++i;
    } else if (s < 2 * l) {
      x.push_back(x[i] + s * ((l + s - 1) / s));
      set_cand(i, i - 1);
      ++i;
    } else {
      auto it = std::upper_bound(x.begin(), x.begin() + i + 1, y);
      const std::int64_t src = (it - x.begin()) - 1;
      if (x[src] == y) {
        x.push_back(x[i] + x[src + 1] - x[src]);
        set_cand(i, src);
        ++i;
      } else if (x[src + 1] + s - x[i - 1] < 2 * l) {
        x[i] = x[src + 1] + s;
      } else {
        x.push_back(x[src + 1] + s);
        x[i] = (x[i - 1] + x[i + 1]) / 2;
        set_cand(i, -1);
        ++i;
      }
    }
  }
  const std::int64_t m = d.phrases();
  cand.resize(m, -1);
  d.fresh.assign(m, 1);
  d.source.assign(m, -1);
  const std::int64_t reach = std::max(2 * l - 1, k);
  auto same = [&](std::int64_t a, std::int64_t b) {
    return d.length(a) == d.length(b) && lce(X, x[a], X, x[b]) >= d.length(a);
  };
  for (std::int64_t j = 1; j < m; ++j) {
    for (std::int64_t c : {cand[j], j - 1}) {
      if (c < 0 || c >= j || x[j] - x[c] > reach) continue;
      if (same(j, c)) {
        d.source[j] = c;
        d.fresh[j] = 0;
        break;
      }
    }
  }
  return d;
}

}  // namespace detail

inline PhraseDecomposition decompose_std(const View& X, std::int64_t k, std::int64_t l) {
  if (k < 1 || l < 1) throw std::invalid_argument("decompose_std needs k, l >= 1");
  const std::int64_t n = X.size();
  if (n < 2 * l) {
    PhraseDecomposition d;
    d.len_lo = l, d.len_hi = 2 * l;
    d.x = {0, n};
    d.fresh = {1};
    d.source = {-1};
    return d;
  }
  return detail::decompose_std_scan(X, detail::self_alignment(X, k), k, l);
}

}  // namespace wed
