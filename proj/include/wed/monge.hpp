#pragma once

#include <map>
#include <stdexcept>

#include "wed/core.hpp"

namespace wed {

struct Matrix {
  std::int64_t rows = 0;
  std::int64_t cols = 0;
  std::vector<Cost> a;

  Matrix() = default;
  Matrix(std::int64_t r, std::int64_t c, Cost fill = kInf) : rows(r), cols(c), a(r * c, fill) {}

  Cost& operator()(std::int64_t i, std::int64_t j) { return a[i * cols + j]; }
  Cost operator()(std::int64_t i, std::int64_t j) const { return a[i * cols + j]; }
  friend bool operator==(const Matrix&, const Matrix&) = default;
};

namespace detail {

template <class F>
void smawk_rec(const std::vector<std::int64_t>& rows, const std::vector<std::int64_t>& cols, const F& f,
               std::vector<std::int64_t>& out) {
  if (rows.empty()) return;
  std::vector<std::int64_t> s;
  s.reserve(rows.size());
  for (std::int64_t c : cols) {
    while (!s.empty()) {
      const std::int64_t r = rows[s.size() - 1];
      if (f(r, s.back()) <= f(r, c)) break;
      s.pop_back();
    }
    if (s.size() < rows.size()) s.push_back(c);
  }
  std::vector<std::int64_t> odd;
  for (std::size_t i = 1; i < rows.size(); i += 2) odd.push_back(rows[i]);
  smawk_rec(odd, s, f, out);
  std::size_t j = 0;
  for (std::size_t i = 0; i < rows.size(); i += 2) {
    const std::int64_t r = rows[i];
    const std::int64_t last = i + 1 < rows.size() ? out[rows[i + 1]] : s.back();
    std::int64_t best = s[j];
    Cost bv = f(r, best);
    while (s[j] != last) {
      ++j;
      const Cost v = f(r, s[j]);
      if (v < bv) bv = v, best = s[j];
    }
    out[r] = best;
  }
}

}  // namespace detail

// Leftmost row minima of a totally monotone rows x cols matrix given by f(i, j).
template <class F>
std::vector<std::int64_t> smawk_row_minima(std::int64_t rows, std::int64_t cols, const F& f) {
  std::vector<std::int64_t> out(rows, 0);
  if (rows == 0 || cols == 0) return out;
  if (rows * cols <= 64) {
    for (std::int64_t i = 0; i < rows; ++i) {
      Cost bv = f(i, 0);
      for (std::int64_t j = 1; j < cols; ++j) {
        const Cost v = f(i, j);
        if (v < bv) bv = v, out[i] = j;
      }
    }
    return out;
  }
  std::vector<std::int64_t> r(rows), c(cols);
  for (std::int64_t i = 0; i < rows; ++i) r[i] = i;
  for (std::int64_t j = 0; j < cols; ++j) c[j] = j;
  detail::smawk_rec(r, c, f, out);
  return out;
}

inline std::vector<std::int64_t> smawk_row_minima(const Matrix& m) {
  return smawk_row_minima(m.rows, m.cols, [&](std::int64_t i, std::int64_t j) { return m(i, j); });
}

inline bool is_monge(const Matrix& m) {
  for (std::int64_t i = 0; i + 1 < m.rows; ++i)
    for (std::int64_t j = 0; j + 1 < m.cols; ++j)
      if (cadd(m(i, j), m(i + 1, j + 1)) > cadd(m(i, j + 1), m(i + 1, j))) return false;
  return true;
}

inline Matrix monge_minplus(const Matrix& A, const Matrix& B, Matrix* argmin = nullptr) {
  if (A.cols != B.rows) throw std::invalid_argument("min-plus dimension mismatch");
  Matrix C(A.rows, B.cols);
  if (argmin) *argmin = Matrix(A.rows, B.cols, 0);
  if (A.cols == 0) return C;
  for (std::int64_t i = 0; i < A.rows; ++i) {
    const Cost* ai = &A.a[i * A.cols];
    auto f = [&](std::int64_t j, std::int64_t t) { return cadd(ai[t], B(t, j)); };
    auto arg = smawk_row_minima(B.cols, A.cols, f);
    for (std::int64_t j = 0; j < B.cols; ++j) {
      C(i, j) = f(j, arg[j]);
      if (argmin) (*argmin)(i, j) = arg[j];
    }
  }
  return C;
}

inline std::vector<Cost> vec_minplus(const std::vector<Cost>& v, const Matrix& M,
                                     std::vector<std::int64_t>* argmin = nullptr) {
  if (static_cast<std::int64_t>(v.size()) != M.rows) throw std::invalid_argument("vector-matrix dimension mismatch");
  std::vector<Cost> out(M.cols, kInf);
  if (M.rows == 0) return out;
  auto f = [&](std::int64_t j, std::int64_t t) { return cadd(v[t], M(t, j)); };
  auto arg = smawk_row_minima(M.cols, M.rows, f);
  for (std::int64_t j = 0; j < M.cols; ++j) out[j] = f(j, arg[j]);
  if (argmin) *argmin = std::move(arg);
  return out;
}

// All powers visited by the floor/ceil descent towards exponent e, keyed by exponent.
struct PowerTable {
  std::map<std::int64_t, Matrix> pow;
  const Matrix& operator[](std::int64_t e) const { return pow.at(e); }
};

inline PowerTable monge_power_table(const Matrix& D, std::int64_t e) {
  if (D.rows != D.cols) throw std::invalid_argument("power of a non-square matrix");
  if (e < 1) throw std::invalid_argument("exponent must be positive");
  PowerTable t;
  t.pow.emplace(1, D);
  int top = 0;
  while ((std::int64_t{1} << top) < e) ++top;
  for (int s = top - 1; s >= 0; --s) {
    const std::int64_t lo = e >> s;
    const std::int64_t hi = (e + (std::int64_t{1} << s) - 1) >> s;
    for (std::int64_t want : {lo, hi}) {
      if (t.pow.count(want)) continue;
      const std::int64_t a = want / 2, b = want - a;
      t.pow.emplace(want, monge_minplus(t.pow.at(a), t.pow.at(b)));
    }
  }
  return t;
}

inline Matrix monge_power(const Matrix& D, std::int64_t e) { return monge_power_table(D, e)[e]; }

}  // namespace wed
