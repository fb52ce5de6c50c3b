// Sparse Gaussian elimination kernels shared by the SNF and rank routines.
#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

#include "tlhom/exactlin.hpp"

namespace tlh {

inline int cmpabs(const mpz_class& x, const mpz_class& y) { return mpz_cmpabs(x.get_mpz_t(), y.get_mpz_t()); }
inline int cmpabs(const mpz_class& x, unsigned long y) { return mpz_cmpabs_ui(x.get_mpz_t(), y); }

}  // namespace tlh

namespace tlh::detail {

struct Overflow {};

template <class V>
struct Entry {
  std::uint32_t col;
  V val;
};

template <class V>
using Row = std::vector<Entry<V>>;

inline bool is_zero(std::int64_t v) { return v == 0; }
inline bool is_zero(const mpz_class& v) { return sgn(v) == 0; }
inline bool is_unit(std::int64_t v) { return v == 1 || v == -1; }
inline bool is_unit(const mpz_class& v) { return cmpabs(v, 1) == 0; }
inline std::uint64_t magnitude(std::int64_t v) { return v < 0 ? -static_cast<std::uint64_t>(v) : v; }
inline std::uint64_t magnitude(const mpz_class& v) {
  return v.fits_slong_p() ? magnitude(static_cast<std::int64_t>(v.get_si())) : UINT64_MAX;
}

// x*s - y*t with overflow detection
inline std::int64_t lin(std::int64_t x, std::int64_t s, std::int64_t y, std::int64_t t) {
  std::int64_t a, b, r;
  if (__builtin_mul_overflow(x, s, &a) || __builtin_mul_overflow(y, t, &b) || __builtin_sub_overflow(a, b, &r))
    throw Overflow{};
  return r;
}
inline mpz_class lin(const mpz_class& x, const mpz_class& s, const mpz_class& y, const mpz_class& t) {
  return x * s - y * t;
}

/** Integer elimination restricted to unit pivots (unimodular, keeps invariant factors). */
template <class V>
struct UnitPolicy {
  using value_type = V;
  bool pivot_ok(const V& v) const { return is_unit(v); }
  // returns coefficients (s, t): new r2 = s*r2 - t*r
  void coefficients(const V& piv, const V& v2, V& s, V& t) const {
    s = 1;
    t = lin(v2, piv, V(0), V(0));
  }
  V combine(const V& x, const V& s, const V& y, const V& t) const { return lin(x, s, y, t); }
  void finish_row(Row<V>&) const {}
};

/** Fraction-free elimination with any nonzero pivot; rank over Q only. */
template <class V>
struct FractionFreePolicy {
  using value_type = V;
  bool pivot_ok(const V& v) const { return !is_zero(v); }
  void coefficients(const V& piv, const V& v2, V& s, V& t) const {
    V g = gcd_of(piv, v2);
    s = piv / g;
    t = v2 / g;
  }
  V combine(const V& x, const V& s, const V& y, const V& t) const { return lin(x, s, y, t); }
  void finish_row(Row<V>& r) const {
    if (r.empty()) return;
    V g = 0;
    for (auto& e : r) {
      g = gcd_of(g, e.val);
      if (is_unit(g)) return;
    }
    for (auto& e : r) e.val /= g;
  }
  static std::int64_t gcd_of(std::int64_t a, std::int64_t b) {
    std::uint64_t x = magnitude(a), y = magnitude(b);
    while (y) {
      std::uint64_t t = x % y;
      x = y;
      y = t;
    }
    if (x > static_cast<std::uint64_t>(INT64_MAX)) throw Overflow{};
    return static_cast<std::int64_t>(x);
  }
  static mpz_class gcd_of(const mpz_class& a, const mpz_class& b) { return gcd(a, b); }
};

/** Elimination over F_p; values in [0,p). */
struct ModPolicy {
  using value_type = std::int64_t;
  std::int64_t p;
  bool pivot_ok(std::int64_t v) const { return v != 0; }
  std::int64_t inv(std::int64_t a) const {
    std::int64_t r = 1, b = a, e = p - 2;
    while (e) {
      if (e & 1) r = r * b % p;
      b = b * b % p;
      e >>= 1;
    }
    return r;
  }
  void coefficients(std::int64_t piv, std::int64_t v2, std::int64_t& s, std::int64_t& t) const {
    s = 1;
    t = v2 * inv(piv) % p;
  }
  std::int64_t combine(std::int64_t x, std::int64_t s, std::int64_t y, std::int64_t t) const {
    std::int64_t r = (x * s - y * t) % p;
    return r < 0 ? r + p : r;
  }
  void finish_row(Row<std::int64_t>&) const {}
};

/**
 * Markowitz-style sparse elimination. Rows are sparse vectors; columns keep
 * (possibly stale) lists of the rows that touch them. Pivots are taken from
 * the sparsest column first, ties broken by row length and then magnitude.
 */
template <class Policy>
class SparseEliminator {
 public:
  using V = typename Policy::value_type;

  SparseEliminator(const SparseMatrix& m, Policy pol, std::uint32_t modulus = 0) : pol_(pol) {
    // rows of the eliminator are the matrix columns when that side is sparser per line
    const bool use_transpose = m.cols() > m.rows();
    ncols_ = use_transpose ? m.rows() : m.cols();
    rows_.resize(use_transpose ? m.cols() : m.rows());
    for (std::uint32_t c = 0; c < m.cols(); ++c)
      for (std::uint32_t k = m.col_begin(c); k < m.col_end(c); ++k) {
        std::int64_t v = m.value(k);
        if (modulus) {
          v %= static_cast<std::int64_t>(modulus);
          if (v < 0) v += modulus;
          if (v == 0) continue;
        }
        std::uint32_t r = m.row_index(k);
        if (use_transpose)
          rows_[c].push_back({r, V(v)});
        else
          rows_[r].push_back({c, V(v)});
      }
    for (auto& r : rows_)
      std::sort(r.begin(), r.end(), [](const Entry<V>& a, const Entry<V>& b) { return a.col < b.col; });
    col_rows_.resize(ncols_);
    col_count_.assign(ncols_, 0);
    alive_.assign(rows_.size(), 1);
    for (std::uint32_t r = 0; r < rows_.size(); ++r)
      for (auto& e : rows_[r]) {
        col_rows_[e.col].push_back(r);
        ++col_count_[e.col];
      }
    for (std::uint32_t c = 0; c < ncols_; ++c)
      if (col_count_[c]) queue_.insert({col_count_[c], c});
  }

  /** Runs to exhaustion of admissible pivots; returns the number of pivots taken. */
  std::size_t run() {
    bool progress = true;
    while (progress) {
      progress = false;
      while (!queue_.empty()) {
        auto [cnt, c] = *queue_.begin();
        queue_.erase(queue_.begin());
        std::int64_t r = choose_row(c);
        if (r < 0) {
          deferred_.push_back(c);
          continue;
        }
        eliminate(static_cast<std::uint32_t>(r), c);
        ++pivots_;
      }
      // operations may have created admissible entries in deferred columns
      std::vector<std::uint32_t> again;
      for (std::uint32_t c : deferred_)
        if (col_count_[c] && choose_row(c) >= 0) again.push_back(c);
      if (!again.empty()) {
        progress = true;
        std::vector<std::uint32_t> keep;
        for (std::uint32_t c : deferred_)
          if (col_count_[c] && std::find(again.begin(), again.end(), c) == again.end()) keep.push_back(c);
        deferred_ = keep;
        for (std::uint32_t c : again) queue_.insert({col_count_[c], c});
      }
    }
    return pivots_;
  }

  /** Remaining nonzero rows, restricted to the remaining columns, as a dense matrix. */
  std::vector<std::vector<mpz_class>> remainder() const {
    std::vector<std::uint32_t> cols;
    for (std::uint32_t c = 0; c < ncols_; ++c)
      if (col_count_[c]) cols.push_back(c);
    std::vector<std::uint32_t> pos(ncols_, 0);
    for (std::uint32_t k = 0; k < cols.size(); ++k) pos[cols[k]] = k;
    std::vector<std::vector<mpz_class>> out;
    for (std::uint32_t r = 0; r < rows_.size(); ++r) {
      if (!alive_[r] || rows_[r].empty()) continue;
      std::vector<mpz_class> dense(cols.size());
      for (auto& e : rows_[r]) dense[pos[e.col]] = to_mpz(e.val);
      out.push_back(std::move(dense));
    }
    return out;
  }

 private:
  static mpz_class to_mpz(std::int64_t v) {
    mpz_class z;
    mpz_set_si(z.get_mpz_t(), v);
    return z;
  }
  static mpz_class to_mpz(const mpz_class& v) { return v; }

  const V* find(std::uint32_t r, std::uint32_t c) const {
    auto& row = rows_[r];
    auto it = std::lower_bound(row.begin(), row.end(), c, [](const Entry<V>& e, std::uint32_t x) { return e.col < x; });
    if (it == row.end() || it->col != c) return nullptr;
    return &it->val;
  }

  std::int64_t choose_row(std::uint32_t c) {
    auto& list = col_rows_[c];
    std::vector<std::uint32_t> live;
    std::int64_t best = -1;
    std::size_t best_len = SIZE_MAX;
    std::uint64_t best_mag = UINT64_MAX;
    for (std::uint32_t r : list) {
      if (!alive_[r]) continue;
      const V* v = find(r, c);
      if (!v) continue;
      if (!live.empty() && live.back() == r) continue;
      live.push_back(r);
      if (!pol_.pivot_ok(*v)) continue;
      std::size_t len = rows_[r].size();
      std::uint64_t mag = magnitude(*v);
      if (len < best_len || (len == best_len && mag < best_mag)) {
        best = r;
        best_len = len;
        best_mag = mag;
      }
    }
    std::sort(live.begin(), live.end());
    live.erase(std::unique(live.begin(), live.end()), live.end());
    list = std::move(live);
    return best;
  }

  void set_count(std::uint32_t c, std::uint32_t n) {
    auto it = queue_.find({col_count_[c], c});
    bool queued = it != queue_.end();
    if (queued) queue_.erase(it);
    col_count_[c] = n;
    if (queued && n) queue_.insert({n, c});
  }

  void eliminate(std::uint32_t r, std::uint32_t c) {
    const Row<V> prow = rows_[r];
    const V piv = *find(r, c);
    std::vector<std::uint32_t> targets = col_rows_[c];
    for (std::uint32_t r2 : targets) {
      if (r2 == r || !alive_[r2]) continue;
      const V* vp = find(r2, c);
      if (!vp) continue;
      V s, t;
      pol_.coefficients(piv, *vp, s, t);
      Row<V> merged;
      merged.reserve(rows_[r2].size() + prow.size());
      auto& old = rows_[r2];
      std::size_t i = 0, j = 0;
      while (i < old.size() || j < prow.size()) {
        if (j == prow.size() || (i < old.size() && old[i].col < prow[j].col)) {
          V x = pol_.combine(old[i].val, s, V(0), V(0));
          merged.push_back({old[i].col, x});
          ++i;
        } else if (i == old.size() || prow[j].col < old[i].col) {
          V x = pol_.combine(V(0), V(0), prow[j].val, t);
          std::uint32_t cc = prow[j].col;
          merged.push_back({cc, x});
          col_rows_[cc].push_back(r2);
          set_count(cc, col_count_[cc] + 1);
          ++j;
        } else {
          V x = pol_.combine(old[i].val, s, prow[j].val, t);
          std::uint32_t cc = old[i].col;
          if (is_zero(x)) {
            set_count(cc, col_count_[cc] - 1);
          } else {
            merged.push_back({cc, x});
          }
          ++i;
          ++j;
        }
      }
      pol_.finish_row(merged);
      old = std::move(merged);
    }
    for (auto& e : rows_[r]) set_count(e.col, col_count_[e.col] - 1);
    rows_[r].clear();
    rows_[r].shrink_to_fit();
    alive_[r] = 0;
    col_rows_[c].clear();
  }

  Policy pol_;
  std::uint32_t ncols_ = 0;
  std::vector<Row<V>> rows_;
  std::vector<std::vector<std::uint32_t>> col_rows_;
  std::vector<std::uint32_t> col_count_;
  std::vector<char> alive_;
  std::set<std::pair<std::uint32_t, std::uint32_t>> queue_;
  std::vector<std::uint32_t> deferred_;
  std::size_t pivots_ = 0;
};

}  // namespace tlh::detail
