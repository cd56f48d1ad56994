#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <stdexcept>
#include <vector>

#include "wed/core.hpp"

namespace wed {

namespace detail {

// Induced sorting (SA-IS). s[i] in [0, upper]; returns the suffix array of s.
inline void sais_core(const std::vector<int>& s, int upper, std::vector<int>& sa) {
  const int n = static_cast<int>(s.size());
  sa.assign(n, -1);
  if (n == 0) return;
  if (n == 1) {
    sa[0] = 0;
    return;
  }
  if (n == 2) {
    if (s[0] < s[1]) sa = {0, 1};
    else sa = {1, 0};
    return;
  }
  std::vector<char> ls(n, 0);  // 1 = S-type
  for (int i = n - 2; i >= 0; --i) ls[i] = s[i] == s[i + 1] ? ls[i + 1] : (s[i] < s[i + 1]);
  std::vector<int> sum_l(upper + 1, 0), sum_s(upper + 1, 0);
  for (int i = 0; i < n; ++i) {
    if (!ls[i]) ++sum_s[s[i]];
    else ++sum_l[s[i] + 1];
  }
  for (int i = 0; i <= upper; ++i) {
    sum_s[i] += sum_l[i];
    if (i < upper) sum_l[i + 1] += sum_s[i];
  }
  auto induce = [&](const std::vector<int>& lms) {
    std::fill(sa.begin(), sa.end(), -1);
    std::vector<int> buf(upper + 1);
    std::copy(sum_s.begin(), sum_s.end(), buf.begin());
    for (int d : lms) {
      if (d == n) continue;
      sa[buf[s[d]]++] = d;
    }
    std::copy(sum_l.begin(), sum_l.end(), buf.begin());
    sa[buf[s[n - 1]]++] = n - 1;
    for (int i = 0; i < n; ++i) {
      int v = sa[i];
      if (v >= 1 && !ls[v - 1]) sa[buf[s[v - 1]]++] = v - 1;
    }
    std::copy(sum_l.begin(), sum_l.end(), buf.begin());
    for (int i = n - 1; i >= 0; --i) {
      int v = sa[i];
      if (v >= 1 && ls[v - 1]) sa[--buf[s[v - 1] + 1]] = v - 1;
    }
  };
  std::vector<int> lms_map(n + 1, -1);
  int m = 0;
  for (int i = 1; i < n; ++i)
    if (!ls[i - 1] && ls[i]) lms_map[i] = m++;
  std::vector<int> lms;
  lms.reserve(m);
  for (int i = 1; i < n; ++i)
    if (!ls[i - 1] && ls[i]) lms.push_back(i);
  induce(lms);
  if (m) {
    std::vector<int> sorted_lms;
    sorted_lms.reserve(m);
    for (int v : sa)
      if (lms_map[v] != -1) sorted_lms.push_back(v);
    std::vector<int> rec_s(m);
    int rec_upper = 0;
    rec_s[lms_map[sorted_lms[0]]] = 0;
    for (int i = 1; i < m; ++i) {
      int l = sorted_lms[i - 1], r = sorted_lms[i];
      int end_l = (lms_map[l] + 1 < m) ? lms[lms_map[l] + 1] : n;
      int end_r = (lms_map[r] + 1 < m) ? lms[lms_map[r] + 1] : n;
      bool same = true;
      if (end_l - l != end_r - r) {
        same = false;
      } else {
        while (l < end_l) {
          if (s[l] != s[r]) break;
          ++l, ++r;
        }
        if (l == n || s[l] != s[r]) same = false;
      }
      if (!same) ++rec_upper;
      rec_s[lms_map[sorted_lms[i]]] = rec_upper;
    }
    std::vector<int> rec_sa;
    sais_core(rec_s, rec_upper, rec_sa);
    for (int i = 0; i < m; ++i) sorted_lms[i] = lms[rec_sa[i]];
    induce(sorted_lms);
  }
}

// Range minimum over a fixed array: sparse table over blocks plus scans inside blocks.
class BlockRmq {
 public:
  BlockRmq() = default;
  explicit BlockRmq(std::vector<int> a) : a_(std::move(a)) {
    const std::size_t nb = (a_.size() + kB - 1) / kB;
    if (nb == 0) return;
    std::vector<int> base(nb);
    for (std::size_t b = 0; b < nb; ++b) {
      int m = a_[b * kB];
      for (std::size_t i = b * kB; i < std::min(a_.size(), (b + 1) * kB); ++i) m = std::min(m, a_[i]);
      base[b] = m;
    }
    table_.push_back(std::move(base));
    for (std::size_t len = 2; len <= nb; len *= 2) {
      const auto& prev = table_.back();
      std::vector<int> next(nb - len + 1);
      for (std::size_t i = 0; i + len <= nb; ++i) next[i] = std::min(prev[i], prev[i + len / 2]);
      table_.push_back(std::move(next));
    }
  }

  // min of a[l..r], l <= r
  int query(std::size_t l, std::size_t r) const {
    const std::size_t bl = l / kB, br = r / kB;
    if (bl == br || bl + 1 == br) return scan(l, r);
    int m = std::min(scan(l, (bl + 1) * kB - 1), scan(br * kB, r));
    const std::size_t lo = bl + 1, hi = br - 1;
    const int t = 63 - __builtin_clzll(hi - lo + 1);
    return std::min({m, table_[t][lo], table_[t][hi + 1 - (std::size_t{1} << t)]});
  }

 private:
  static constexpr std::size_t kB = 32;
  int scan(std::size_t l, std::size_t r) const {
    int m = a_[l];
    for (std::size_t i = l + 1; i <= r; ++i) m = std::min(m, a_[i]);
    return m;
  }
  std::vector<int> a_;
  std::vector<std::vector<int>> table_;
};

class LcpStructure {
 public:
  LcpStructure() = default;
  LcpStructure(const std::vector<int>& text, int upper) {
    sais_core(text, upper, sa_);
    const int n = static_cast<int>(text.size());
    rank_.assign(n, 0);
    for (int i = 0; i < n; ++i) rank_[sa_[i]] = i;
    std::vector<int> lcp(n, 0);
    int h = 0;
    for (int i = 0; i < n; ++i) {
      if (h > 0) --h;
      if (rank_[i] == 0) continue;
      int j = sa_[rank_[i] - 1];
      while (i + h < n && j + h < n && text[i + h] == text[j + h]) ++h;
      lcp[rank_[i]] = h;
    }
    rmq_ = BlockRmq(std::move(lcp));
  }

  std::int64_t lcp(std::int64_t i, std::int64_t j) const {
    if (i == j) return std::numeric_limits<std::int64_t>::max();
    int a = rank_[i], b = rank_[j];
    if (a > b) std::swap(a, b);
    return rmq_.query(a + 1, b);
  }

 private:
  std::vector<int> sa_, rank_;
  BlockRmq rmq_;
};

}  // namespace detail

struct Fragment {
  int sid = 0;
  std::int64_t b = 0;
  std::int64_t e = 0;
  std::int64_t size() const { return e - b; }
};

struct PillarStats {
  std::uint64_t lcp = 0;
  std::uint64_t lcs = 0;
  std::uint64_t access = 0;
  std::uint64_t length = 0;
  std::uint64_t extract = 0;
  std::uint64_t total() const { return lcp + lcs + access + length + extract; }
};

// SuffixArray answers LCP in O(1) after linear preprocessing; Direct compares symbols.
enum class LceBackend { SuffixArray, Direct };

class PillarIndex {
 public:
  explicit PillarIndex(std::vector<SymbolString> family, LceBackend backend = LceBackend::SuffixArray)
      : strs_(std::move(family)), backend_(backend) {
    if (backend_ == LceBackend::Direct) return;
    std::size_t total = 0;
    Sym top = 0;
    for (const auto& s : strs_) {
      total += s.size();
      for (Sym c : s) top = std::max(top, c);
    }
    if (total + strs_.size() > static_cast<std::size_t>(std::numeric_limits<int>::max() / 2))
      throw std::length_error("string family too large for the index");
    sigma_ = static_cast<int>(top) + 1;
    std::vector<int> text;
    text.reserve(total + strs_.size());
    for (std::size_t i = 0; i < strs_.size(); ++i) {
      start_.push_back(static_cast<std::int64_t>(text.size()));
      for (Sym c : strs_[i]) text.push_back(static_cast<int>(c));
      text.push_back(sigma_ + static_cast<int>(i));
    }
    fwd_ = detail::LcpStructure(text, sigma_ + static_cast<int>(strs_.size()));
  }

  std::size_t family_size() const { return strs_.size(); }
  LceBackend backend() const { return backend_; }
  const SymbolString& str(int sid) const { return strs_[sid]; }
  Fragment whole(int sid) const { return {sid, 0, static_cast<std::int64_t>(strs_[sid].size())}; }

  std::int64_t lcp(const Fragment& s, const Fragment& t) const {
    ++stats.lcp;
    check(s), check(t);
    const std::int64_t lim = std::min(s.size(), t.size());
    if (lim == 0) return 0;
    if (backend_ == LceBackend::Direct) {
      const Sym* a = strs_[s.sid].data() + s.b;
      const Sym* b = strs_[t.sid].data() + t.b;
      std::int64_t l = 0;
      while (l < lim && a[l] == b[l]) ++l;
      return l;
    }
    return std::min(lim, fwd_.lcp(start_[s.sid] + s.b, start_[t.sid] + t.b));
  }

  std::int64_t lcs(const Fragment& s, const Fragment& t) const {
    ++stats.lcs;
    check(s), check(t);
    const std::int64_t lim = std::min(s.size(), t.size());
    if (lim == 0) return 0;
    if (backend_ == LceBackend::Direct) {
      const Sym* a = strs_[s.sid].data() + s.e;
      const Sym* b = strs_[t.sid].data() + t.e;
      std::int64_t l = 0;
      while (l < lim && a[-l - 1] == b[-l - 1]) ++l;
      return l;
    }
    const auto& r = reversed();
    auto pos = [&](const Fragment& f) {
      return rstart_[f.sid] + static_cast<std::int64_t>(strs_[f.sid].size()) - f.e;
    };
    return std::min(lim, r.lcp(pos(s), pos(t)));
  }

  // Raw symbols for callers that do their own Direct scans and report counts through stats.
  const Sym* data(int sid) const { return strs_[sid].data(); }

  // Forward extension from positions i of string a and j of string b, at most lim symbols.
  // Counted as one LCP; positions are trusted.
  std::int64_t extend(int a, std::int64_t i, int b, std::int64_t j, std::int64_t lim) const {
    ++stats.lcp;
    if (lim <= 0) return 0;
    if (backend_ == LceBackend::Direct) {
      const Sym* p = strs_[a].data() + i;
      const Sym* q = strs_[b].data() + j;
      std::int64_t l = 0;
      while (l < lim && p[l] == q[l]) ++l;
      return l;
    }
    return std::min(lim, fwd_.lcp(start_[a] + i, start_[b] + j));
  }

  // Backward extension: common suffix length of a[..i) and b[..j), at most lim. Counted as one LCS.
  std::int64_t extend_back(int a, std::int64_t i, int b, std::int64_t j, std::int64_t lim) const {
    ++stats.lcs;
    if (lim <= 0) return 0;
    if (backend_ == LceBackend::Direct) {
      const Sym* p = strs_[a].data() + i;
      const Sym* q = strs_[b].data() + j;
      std::int64_t l = 0;
      while (l < lim && p[-l - 1] == q[-l - 1]) ++l;
      return l;
    }
    const auto& r = reversed();
    const std::int64_t pa = rstart_[a] + static_cast<std::int64_t>(strs_[a].size()) - i;
    const std::int64_t pb = rstart_[b] + static_cast<std::int64_t>(strs_[b].size()) - j;
    return std::min(lim, r.lcp(pa, pb));
  }

  Sym access(const Fragment& f, std::int64_t i) const {
    ++stats.access;
    return strs_[f.sid][f.b + i];
  }

  std::int64_t length(const Fragment& f) const {
    ++stats.length;
    return f.size();
  }

  Fragment extract(const Fragment& f, std::int64_t i, std::int64_t j) const {
    ++stats.extract;
    if (i < 0 || j < i || j > f.size()) throw std::out_of_range("extract outside fragment");
    return {f.sid, f.b + i, f.b + j};
  }

  void reset_stats() const { stats = {}; }

  mutable PillarStats stats;

 private:
  void check(const Fragment& f) const {
    if (f.sid < 0 || static_cast<std::size_t>(f.sid) >= strs_.size() || f.b < 0 || f.e < f.b ||
        f.e > static_cast<std::int64_t>(strs_[f.sid].size()))
      throw std::out_of_range("invalid fragment");
  }

  const detail::LcpStructure& reversed() const {
    if (!rev_) {
      std::vector<int> text;
      rstart_.clear();
      for (std::size_t i = 0; i < strs_.size(); ++i) {
        rstart_.push_back(static_cast<std::int64_t>(text.size()));
        for (auto it = strs_[i].rbegin(); it != strs_[i].rend(); ++it) text.push_back(static_cast<int>(*it));
        text.push_back(sigma_ + static_cast<int>(i));
      }
      rev_ = std::make_unique<detail::LcpStructure>(text, sigma_ + static_cast<int>(strs_.size()));
    }
    return *rev_;
  }

  std::vector<SymbolString> strs_;
  LceBackend backend_;
  std::vector<std::int64_t> start_;
  int sigma_ = 1;
  detail::LcpStructure fwd_;
  mutable std::vector<std::int64_t> rstart_;
  mutable std::unique_ptr<detail::LcpStructure> rev_;
};

// A fragment bound to its index; element access is counted as a PILLAR Access.
struct View {
  const PillarIndex* ix = nullptr;
  Fragment f;

  View() = default;
  View(const PillarIndex& index, Fragment frag) : ix(&index), f(frag) {}

  std::int64_t size() const { return f.size(); }
  Sym operator[](std::int64_t i) const { return ix->access(f, i); }
  View sub(std::int64_t i, std::int64_t j) const { return View(*ix, ix->extract(f, i, j)); }
  std::int64_t lcp(const View& o) const { return ix->lcp(f, o.f); }
  std::int64_t lcs(const View& o) const { return ix->lcs(f, o.f); }
  bool equals(const View& o) const { return size() == o.size() && lcp(o) == size(); }
};

}  // namespace wed
