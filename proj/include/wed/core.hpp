#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wed {

using Sym = std::uint32_t;
using SymbolString = std::vector<Sym>;

// Costs are numerators over the denominator of the governing WeightFn.
using Cost = std::int64_t;
inline constexpr Cost kInf = std::numeric_limits<Cost>::max() / 4;

inline constexpr bool is_inf(Cost c) { return c >= kInf; }

inline constexpr Cost cadd(Cost a, Cost b) {
  if (a >= kInf || b >= kInf) return kInf;
  Cost s = a + b;
  return s >= kInf ? kInf : s;
}

struct Point {
  std::int64_t x = 0;
  std::int64_t y = 0;
  friend bool operator==(const Point&, const Point&) = default;
};

struct Band {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  bool admits(std::int64_t x, std::int64_t y) const { return lo <= y - x && y - x <= hi; }
};

class WeightFn {
 public:
  WeightFn() = default;
  WeightFn(std::size_t alphabet_size, Cost denominator)
      : sigma_(alphabet_size), den_(denominator),
        table_((alphabet_size + 1) * (alphabet_size + 1), 0) {
    if (denominator <= 0) throw std::invalid_argument("denominator must be positive");
  }

  static WeightFn unit(std::size_t alphabet_size) {
    WeightFn w(alphabet_size, 1);
    for (std::size_t a = 0; a <= alphabet_size; ++a)
      for (std::size_t b = 0; b <= alphabet_size; ++b) w.set(a, b, a == b ? 0 : 1);
    return w;
  }

  std::size_t alphabet_size() const { return sigma_; }
  Cost denominator() const { return den_; }
  Sym eps() const { return static_cast<Sym>(sigma_); }

  // a, b range over [0, alphabet_size]; alphabet_size is the empty symbol.
  Cost operator()(std::size_t a, std::size_t b) const { return table_[a * (sigma_ + 1) + b]; }
  void set(std::size_t a, std::size_t b, Cost c) { table_[a * (sigma_ + 1) + b] = c; }

  Cost sub(Sym a, Sym b) const { return (*this)(a, b); }
  Cost del(Sym a) const { return (*this)(a, sigma_); }
  Cost ins(Sym b) const { return (*this)(sigma_, b); }

  Cost units(std::int64_t k) const {
    if (k < 0) return -1;
    if (k > kInf / den_) return kInf;
    return k * den_;
  }
  // Largest integer k with units(k) <= c.
  std::int64_t floor_units(Cost c) const { return is_inf(c) ? kInf : c / den_; }
  std::int64_t ceil_units(Cost c) const { return is_inf(c) ? kInf : (c + den_ - 1) / den_; }

  bool symmetric() const {
    for (std::size_t a = 0; a <= sigma_; ++a)
      for (std::size_t b = 0; b < a; ++b)
        if ((*this)(a, b) != (*this)(b, a)) return false;
    return true;
  }

 private:
  std::size_t sigma_ = 0;
  Cost den_ = 1;
  std::vector<Cost> table_;
};

struct NormalizeReport {
  bool normalized = true;
  std::vector<std::pair<std::size_t, std::size_t>> violations;
};

inline NormalizeReport normalize_check(const WeightFn& w) {
  NormalizeReport r;
  const std::size_t n = w.alphabet_size() + 1;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      Cost c = w(a, b);
      bool ok = a == b ? (a == w.alphabet_size() || c == 0) : c >= w.denominator();
      if (!ok) r.violations.emplace_back(a, b);
    }
  r.normalized = r.violations.empty();
  return r;
}

inline bool is_normalized(const WeightFn& w) { return normalize_check(w).normalized; }

// Breakpoint representation: endpoints plus every point whose outgoing edge is not a match.
struct Alignment {
  std::vector<Point> bp;

  bool empty() const { return bp.empty(); }
  Point front() const { return bp.front(); }
  Point back() const { return bp.back(); }
};

struct AlignmentError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline void check_alignment(const Alignment& a) {
  if (a.bp.empty()) throw AlignmentError("alignment has no breakpoints");
  for (std::size_t t = 1; t < a.bp.size(); ++t) {
    const Point p = a.bp[t - 1], q = a.bp[t];
    if (q.x < p.x || q.y < p.y) throw AlignmentError("breakpoints are not monotone");
    if (q == p) throw AlignmentError("repeated breakpoint");
  }
}

inline std::vector<Point> expand_breakpoints(const Alignment& a) {
  check_alignment(a);
  std::vector<Point> out{a.bp.front()};
  std::vector<Point> seg;
  for (std::size_t t = 1; t < a.bp.size(); ++t) {
    const Point p = a.bp[t - 1], q = a.bp[t];
    const std::int64_t len = std::max(q.x - p.x, q.y - p.y);
    seg.clear();
    for (std::int64_t d = 0; d < len; ++d) seg.push_back({q.x - d, q.y - d});
    out.insert(out.end(), seg.rbegin(), seg.rend());
  }
  for (std::size_t t = 1; t < out.size(); ++t) {
    const std::int64_t dx = out[t].x - out[t - 1].x, dy = out[t].y - out[t - 1].y;
    if (dx < 0 || dy < 0 || dx > 1 || dy > 1 || dx + dy == 0)
      throw AlignmentError("breakpoints do not expand to a staircase");
  }
  return out;
}

template <class SX, class SY>
Alignment from_path(const std::vector<Point>& path, const SX& X, const SY& Y) {
  Alignment a;
  if (path.empty()) return a;
  for (std::size_t t = 0; t < path.size(); ++t) {
    if (t == 0 || t + 1 == path.size()) {
      a.bp.push_back(path[t]);
      continue;
    }
    const Point p = path[t], q = path[t + 1];
    bool match = q.x == p.x + 1 && q.y == p.y + 1 && X[p.x] == Y[p.y];
    if (!match) a.bp.push_back(p);
  }
  return a;
}

template <class SX, class SY>
Cost alignment_cost(const SX& X, const SY& Y, const Alignment& a, const WeightFn& w) {
  auto pts = expand_breakpoints(a);
  const Point s = pts.front(), e = pts.back();
  if (s.x < 0 || s.y < 0 || e.x > static_cast<std::int64_t>(X.size()) ||
      e.y > static_cast<std::int64_t>(Y.size()))
    throw AlignmentError("alignment exceeds string bounds");
  Cost c = 0;
  for (std::size_t t = 1; t < pts.size(); ++t) {
    const Point p = pts[t - 1], q = pts[t];
    if (q.x > p.x && q.y > p.y)
      c = cadd(c, w.sub(X[p.x], Y[p.y]));
    else if (q.x > p.x)
      c = cadd(c, w.del(X[p.x]));
    else
      c = cadd(c, w.ins(Y[p.y]));
  }
  return c;
}

// Unit cost: number of non-match edges.
template <class SX, class SY>
std::int64_t alignment_unit_cost(const SX& X, const SY& Y, const Alignment& a) {
  auto pts = expand_breakpoints(a);
  std::int64_t c = 0;
  for (std::size_t t = 1; t < pts.size(); ++t) {
    const Point p = pts[t - 1], q = pts[t];
    if (!(q.x > p.x && q.y > p.y && X[p.x] == Y[p.y])) ++c;
  }
  return c;
}

// Drops interior points whose outgoing edge is a match, leaving the breakpoint representation.
template <class SX, class SY>
Alignment canonical(const SX& X, const SY& Y, const Alignment& a) {
  Alignment out;
  for (std::size_t t = 0; t < a.bp.size(); ++t) {
    const Point p = a.bp[t];
    if (t > 0 && t + 1 < a.bp.size()) {
      const Point q = a.bp[t + 1];
      if (q.x - p.x == q.y - p.y && q.x > p.x && X[p.x] == Y[p.y]) continue;
    }
    if (!out.bp.empty() && out.bp.back() == p) continue;
    out.bp.push_back(p);
  }
  return out;
}

// Joins alignments whose end and start points coincide.
inline Alignment concat(const Alignment& a, const Alignment& b) {
  if (a.bp.empty()) return b;
  if (b.bp.empty()) return a;
  if (!(a.back() == b.front())) throw AlignmentError("alignments do not meet");
  Alignment r = a;
  r.bp.insert(r.bp.end(), b.bp.begin() + 1, b.bp.end());
  return r;
}

// In-place form of concat.
inline void append(Alignment& a, const Alignment& b) {
  if (b.bp.empty()) return;
  if (a.bp.empty()) {
    a = b;
    return;
  }
  if (!(a.back() == b.front())) throw AlignmentError("alignments do not meet");
  a.bp.insert(a.bp.end(), b.bp.begin() + 1, b.bp.end());
}

inline Alignment shift(Alignment a, std::int64_t dx, std::int64_t dy) {
  for (auto& p : a.bp) p.x += dx, p.y += dy;
  return a;
}

enum class Op : char { Match = '=', Sub = 'X', Ins = 'I', Del = 'D' };

template <class SX, class SY>
std::vector<Op> alignment_ops(const SX& X, const SY& Y, const Alignment& a) {
  auto pts = expand_breakpoints(a);
  std::vector<Op> ops;
  for (std::size_t t = 1; t < pts.size(); ++t) {
    const Point p = pts[t - 1], q = pts[t];
    if (q.x > p.x && q.y > p.y)
      ops.push_back(X[p.x] == Y[p.y] ? Op::Match : Op::Sub);
    else if (q.x > p.x)
      ops.push_back(Op::Del);
    else
      ops.push_back(Op::Ins);
  }
  return ops;
}

template <class SX, class SY>
std::string to_cigar(const SX& X, const SY& Y, const Alignment& a) {
  auto ops = alignment_ops(X, Y, a);
  std::string s;
  for (std::size_t i = 0; i < ops.size();) {
    std::size_t j = i;
    while (j < ops.size() && ops[j] == ops[i]) ++j;
    s += std::to_string(j - i);
    s += static_cast<char>(ops[i]);
    i = j;
  }
  return s;
}

inline std::vector<Op> parse_cigar(const std::string& s) {
  std::vector<Op> ops;
  std::size_t n = 0;
  bool have = false;
  for (char c : s) {
    if (c >= '0' && c <= '9') {
      n = n * 10 + static_cast<std::size_t>(c - '0');
      have = true;
    } else if (c == '=' || c == 'X' || c == 'I' || c == 'D') {
      if (!have) throw AlignmentError("cigar run without length");
      ops.insert(ops.end(), n, static_cast<Op>(c));
      n = 0;
      have = false;
    } else {
      throw AlignmentError("bad cigar character");
    }
  }
  if (have) throw AlignmentError("dangling cigar length");
  return ops;
}

template <class SX, class SY>
Alignment from_ops(const std::vector<Op>& ops, Point start, const SX& X, const SY& Y) {
  std::vector<Point> path{start};
  for (Op o : ops) {
    Point p = path.back();
    if (o == Op::Match || o == Op::Sub) ++p.x, ++p.y;
    else if (o == Op::Del) ++p.x;
    else ++p.y;
    path.push_back(p);
  }
  return from_path(path, X, Y);
}

// Composition of A: X -> Y and B: Y -> Z, both given with the strings they align.
template <class SX, class SY, class SZ>
Alignment compose_alignments(const SX& X, const SY& Y, const SZ& Z, const Alignment& A,
                             const Alignment& B) {
  auto pa = expand_breakpoints(A), pb = expand_breakpoints(B);
  if (pa.front().y != pb.front().x || pa.back().y != pb.back().x)
    throw AlignmentError("composition domain mismatch");
  enum K { D, I, M };
  auto steps = [](const std::vector<Point>& p) {
    std::vector<std::pair<K, Point>> s;
    for (std::size_t t = 1; t < p.size(); ++t) {
      const Point a = p[t - 1], b = p[t];
      K k = (b.x > a.x && b.y > a.y) ? M : (b.x > a.x ? D : I);
      s.emplace_back(k, a);
    }
    return s;
  };
  auto sa = steps(pa), sb = steps(pb);
  std::vector<Point> path{{pa.front().x, pb.front().y}};
  std::size_t i = 0, j = 0;
  auto push = [&](std::int64_t dx, std::int64_t dz) {
    Point p = path.back();
    path.push_back({p.x + dx, p.y + dz});
  };
  while (i < sa.size() || j < sb.size()) {
    if (i < sa.size() && sa[i].first == D) {
      push(1, 0), ++i;
    } else if (j < sb.size() && sb[j].first == I) {
      push(0, 1), ++j;
    } else {
      if (i >= sa.size() || j >= sb.size()) throw AlignmentError("composition ran out of steps");
      K ka = sa[i].first, kb = sb[j].first;
      if (ka == M && kb == M) push(1, 1);
      else if (ka == M) push(1, 0);
      else if (kb == M) push(0, 1);
      ++i, ++j;
    }
  }
  return from_path(path, X, Z);
}

inline std::pair<Alignment, Alignment> split_alignment(const Alignment& a, Point at) {
  auto pts = expand_breakpoints(a);
  auto it = std::find(pts.begin(), pts.end(), at);
  if (it == pts.end()) throw AlignmentError("split point is not on the alignment");
  Alignment a1, a2;
  for (const Point& p : a.bp) {
    if (p.x < at.x || (p.x == at.x && p.y < at.y)) a1.bp.push_back(p);
  }
  a1.bp.push_back(at);
  a2.bp.push_back(at);
  for (const Point& p : a.bp) {
    if (p.x > at.x || (p.x == at.x && p.y > at.y)) a2.bp.push_back(p);
  }
  return {a1, a2};
}

}  // namespace wed
