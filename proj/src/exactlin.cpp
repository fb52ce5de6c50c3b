#include "tlhom/exactlin.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "elim.hpp"

namespace tlh {

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

Ring Ring::Fp(std::uint32_t p, std::int64_t a) {
  if (!is_prime(p) || p > (1u << 30)) throw InvalidInput("F_p needs a prime p below 2^30");
  std::int64_t r = a % static_cast<std::int64_t>(p);
  if (r < 0) r += p;
  return {RingKind::PrimeField, p, r};
}

std::string Ring::name() const {
  switch (kind) {
    case RingKind::Integers: return "Z";
    case RingKind::Rationals: return "Q";
    case RingKind::PrimeField: return "F" + std::to_string(p);
  }
  return "?";
}

Ring Ring::parse(const std::string& text, std::int64_t a) {
  std::string t;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch)) && ch != '_' && ch != ':') t += ch;
  if (t == "Z") return Z(a);
  if (t == "Q") return Q(a);
  std::string digits;
  if (t.size() > 1 && t[0] == 'F') digits = t.substr(t[1] == 'p' ? 2 : 1);
  if (t.rfind("GF", 0) == 0) digits = t.substr(2);
  if (!digits.empty() && std::all_of(digits.begin(), digits.end(), ::isdigit) && digits.size() < 10)
    return Fp(static_cast<std::uint32_t>(std::stoul(digits)), a);
  throw InvalidInput("unknown ring '" + text + "' (expected Z, Q or Fp with p prime, e.g. F2)");
}

std::int64_t Ring::reduce(std::int64_t v) const {
  if (kind != RingKind::PrimeField) return v;
  v %= static_cast<std::int64_t>(p);
  return v < 0 ? v + p : v;
}

std::int64_t Ring::a_power(int k) const {
  std::int64_t r = 1;
  for (int j = 0; j < k; ++j) {
    if (__builtin_mul_overflow(r, a, &r)) throw InvalidInput("coefficient a^k overflows 64 bits");
    r = reduce(r);
  }
  return reduce(r);
}

mpq_class Ring::normalize(const mpq_class& x) const {
  mpq_class y = x;
  y.canonicalize();
  switch (kind) {
    case RingKind::Integers:
      if (y.get_den() != 1) throw InvalidInput("non-integral coefficient over Z");
      return y;
    case RingKind::Rationals: return y;
    case RingKind::PrimeField: {
      mpz_class P = p, num = y.get_num(), den = y.get_den(), inv;
      if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), P.get_mpz_t()) == 0)
        throw InvalidInput("denominator not invertible in " + name());
      mpz_class r = num * inv;
      mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), P.get_mpz_t());
      return mpq_class(r);
    }
  }
  return y;
}

bool Ring::is_unit(const mpq_class& x) const {
  mpq_class y = normalize(x);
  if (sgn(y) == 0) return false;
  if (kind == RingKind::Integers) return abs(y) == 1;
  return true;
}

mpq_class Ring::inverse(const mpq_class& x) const {
  if (!is_unit(x)) throw InvalidInput("element is not invertible in " + name());
  return normalize(1 / normalize(x));
}

SparseMatrix SparseMatrix::from_triplets(std::uint32_t rows, std::uint32_t cols, std::vector<Triplet> t,
                                         std::uint32_t modulus) {
  for (auto& x : t)
    if (x.row >= rows || x.col >= cols) throw InternalInconsistency("matrix triplet out of range");
  std::sort(t.begin(), t.end(), [](const Triplet& a, const Triplet& b) {
    return a.col != b.col ? a.col < b.col : a.row < b.row;
  });
  SparseMatrix m(rows, cols);
  std::size_t k = 0;
  for (std::uint32_t c = 0; c < cols; ++c) {
    while (k < t.size() && t[k].col == c) {
      std::uint32_t r = t[k].row;
      __int128 sum = 0;
      while (k < t.size() && t[k].col == c && t[k].row == r) sum += t[k++].value;
      if (modulus) {
        sum %= modulus;
        if (sum < 0) sum += modulus;
      }
      if (sum > INT64_MAX || sum < INT64_MIN) throw InternalInconsistency("matrix entry overflow");
      if (sum != 0) {
        m.row_idx_.push_back(r);
        m.val_.push_back(static_cast<std::int64_t>(sum));
      }
    }
    m.col_ptr_[c + 1] = static_cast<std::uint32_t>(m.val_.size());
  }
  return m;
}

SparseMatrix SparseMatrix::from_dense(const std::vector<std::vector<std::int64_t>>& rows_data) {
  std::uint32_t rows = static_cast<std::uint32_t>(rows_data.size());
  std::uint32_t cols = rows ? static_cast<std::uint32_t>(rows_data[0].size()) : 0;
  std::vector<Triplet> t;
  for (std::uint32_t r = 0; r < rows; ++r) {
    if (rows_data[r].size() != cols) throw InvalidInput("ragged dense matrix");
    for (std::uint32_t c = 0; c < cols; ++c)
      if (rows_data[r][c]) t.push_back({r, c, rows_data[r][c]});
  }
  return from_triplets(rows, cols, std::move(t));
}

std::int64_t SparseMatrix::at(std::uint32_t r, std::uint32_t c) const {
  auto b = row_idx_.begin() + col_ptr_[c], e = row_idx_.begin() + col_ptr_[c + 1];
  auto it = std::lower_bound(b, e, r);
  if (it == e || *it != r) return 0;
  return val_[it - row_idx_.begin()];
}

std::vector<SparseMatrix::Triplet> SparseMatrix::triplets() const {
  std::vector<Triplet> out;
  out.reserve(val_.size());
  for (std::uint32_t c = 0; c < cols_; ++c)
    for (std::uint32_t k = col_ptr_[c]; k < col_ptr_[c + 1]; ++k) out.push_back({row_idx_[k], c, val_[k]});
  return out;
}

SparseMatrix SparseMatrix::transpose() const {
  auto t = triplets();
  for (auto& x : t) std::swap(x.row, x.col);
  return from_triplets(cols_, rows_, std::move(t));
}

SparseMatrix SparseMatrix::permuted(const std::vector<std::uint32_t>& row_perm,
                                    const std::vector<std::uint32_t>& col_perm) const {
  auto t = triplets();
  for (auto& x : t) {
    x.row = row_perm.at(x.row);
    x.col = col_perm.at(x.col);
  }
  return from_triplets(rows_, cols_, std::move(t));
}

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b, std::uint32_t modulus) {
  if (a.cols() != b.rows()) throw InternalInconsistency("matrix product dimension mismatch");
  std::vector<SparseMatrix::Triplet> out;
  std::vector<__int128> acc(a.rows(), 0);
  std::vector<std::uint32_t> touched;
  for (std::uint32_t c = 0; c < b.cols(); ++c) {
    touched.clear();
    for (std::uint32_t k = b.col_begin(c); k < b.col_end(c); ++k) {
      std::uint32_t mid = b.row_index(k);
      __int128 bv = b.value(k);
      for (std::uint32_t j = a.col_begin(mid); j < a.col_end(mid); ++j) {
        std::uint32_t r = a.row_index(j);
        if (acc[r] == 0) touched.push_back(r);
        acc[r] += bv * a.value(j);
        if (modulus) acc[r] %= modulus;
        if (acc[r] == 0) acc[r] = 0;
      }
    }
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    for (std::uint32_t r : touched) {
      __int128 v = acc[r];
      acc[r] = 0;
      if (v == 0) continue;
      if (v > INT64_MAX || v < INT64_MIN) throw InternalInconsistency("matrix product entry overflow");
      out.push_back({r, c, static_cast<std::int64_t>(v)});
    }
  }
  return SparseMatrix::from_triplets(a.rows(), b.cols(), std::move(out), modulus);
}

std::vector<mpz_class> normalize_diagonal(std::vector<mpz_class> diag) {
  std::vector<mpz_class> units, rest;
  for (auto& d : diag) {
    mpz_class v = abs(d);
    if (v == 0) continue;
    (v == 1 ? units : rest).push_back(v);
  }
  std::sort(rest.begin(), rest.end());
  for (std::size_t i = 0; i < rest.size(); ++i)
    for (std::size_t j = i + 1; j < rest.size(); ++j) {
      if (rest[j] % rest[i] == 0) continue;
      mpz_class g = gcd(rest[i], rest[j]);
      mpz_class l = rest[i] / g * rest[j];
      rest[i] = g;
      rest[j] = l;
    }
  units.insert(units.end(), rest.begin(), rest.end());
  std::sort(units.begin(), units.end(), [](const mpz_class& a, const mpz_class& b) { return a < b; });
  return units;
}

std::vector<mpz_class> dense_smith(std::vector<std::vector<mpz_class>> a) {
  std::vector<mpz_class> diag;
  const std::size_t R = a.size();
  if (R == 0) return diag;
  const std::size_t C = a[0].size();
  std::size_t t = 0;
  while (t < R && t < C) {
    // smallest nonzero entry of the trailing block
    std::size_t pi = R, pj = C;
    for (std::size_t i = t; i < R; ++i)
      for (std::size_t j = t; j < C; ++j)
        if (sgn(a[i][j]) != 0 && (pi == R || cmpabs(a[i][j], a[pi][pj]) < 0)) {
          pi = i;
          pj = j;
        }
    if (pi == R) break;
    for (;;) {
      std::swap(a[t], a[pi]);
      for (std::size_t i = 0; i < R; ++i) std::swap(a[i][t], a[i][pj]);
      const mpz_class piv = a[t][t];
      mpz_class q;
      for (std::size_t i = t + 1; i < R; ++i) {
        if (sgn(a[i][t]) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), piv.get_mpz_t());
        if (q != 0)
          for (std::size_t j = t; j < C; ++j)
            if (sgn(a[t][j]) != 0) a[i][j] -= q * a[t][j];
      }
      for (std::size_t j = t + 1; j < C; ++j) {
        if (sgn(a[t][j]) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), piv.get_mpz_t());
        if (q != 0)
          for (std::size_t i = t; i < R; ++i)
            if (sgn(a[i][t]) != 0) a[i][j] -= q * a[i][t];
      }
      pi = R;
      pj = C;
      for (std::size_t i = t + 1; i < R; ++i)
        if (sgn(a[i][t]) != 0 && (pi == R || cmpabs(a[i][t], a[pi][pj]) < 0)) {
          pi = i;
          pj = t;
        }
      for (std::size_t j = t + 1; j < C; ++j)
        if (sgn(a[t][j]) != 0 && (pi == R || cmpabs(a[t][j], a[pi][pj]) < 0)) {
          pi = t;
          pj = j;
        }
      if (pi == R) break;
    }
    diag.push_back(abs(a[t][t]));
    ++t;
  }
  return normalize_diagonal(std::move(diag));
}

std::vector<std::vector<mpz_class>> integer_kernel(const std::vector<std::vector<mpz_class>>& a, std::size_t cols) {
  // column operations on [A; I]; columns whose A-part vanishes span the kernel
  const std::size_t R = a.size();
  std::vector<std::vector<mpz_class>> col(cols, std::vector<mpz_class>(R + cols));
  for (std::size_t j = 0; j < cols; ++j) {
    for (std::size_t i = 0; i < R; ++i) col[j][i] = a[i][j];
    col[j][R + j] = 1;
  }
  std::size_t k = 0;
  for (std::size_t i = 0; i < R && k < cols; ++i) {
    for (;;) {
      std::size_t best = cols;
      for (std::size_t j = k; j < cols; ++j)
        if (sgn(col[j][i]) != 0 && (best == cols || cmpabs(col[j][i], col[best][i]) < 0)) best = j;
      if (best == cols) break;
      std::swap(col[k], col[best]);
      bool clean = true;
      mpz_class q;
      for (std::size_t j = k + 1; j < cols; ++j) {
        if (sgn(col[j][i]) == 0) continue;
        mpz_fdiv_q(q.get_mpz_t(), col[j][i].get_mpz_t(), col[k][i].get_mpz_t());
        for (std::size_t t = 0; t < R + cols; ++t)
          if (sgn(col[k][t]) != 0) col[j][t] -= q * col[k][t];
        if (sgn(col[j][i]) != 0) clean = false;
      }
      if (clean) {
        ++k;
        break;
      }
    }
  }
  std::vector<std::vector<mpz_class>> out;
  for (std::size_t j = k; j < cols; ++j) out.emplace_back(col[j].begin() + R, col[j].end());
  return out;
}

namespace {

template <class V>
std::vector<mpz_class> snf_sparse(const SparseMatrix& m) {
  detail::SparseEliminator<detail::UnitPolicy<V>> el(m, {});
  std::size_t units = el.run();
  auto rest = dense_smith(el.remainder());
  std::vector<mpz_class> out(units, mpz_class(1));
  out.insert(out.end(), rest.begin(), rest.end());
  return normalize_diagonal(std::move(out));
}

template <class V>
std::size_t rank_q_sparse(const SparseMatrix& m) {
  detail::SparseEliminator<detail::FractionFreePolicy<V>> el(m, {});
  return el.run();
}

}  // namespace

std::vector<mpz_class> smith_normal_form(const SparseMatrix& m) {
  try {
    return snf_sparse<std::int64_t>(m);
  } catch (const detail::Overflow&) {
    return snf_sparse<mpz_class>(m);
  }
}

std::size_t rank_over_Q(const SparseMatrix& m) {
  try {
    return rank_q_sparse<std::int64_t>(m);
  } catch (const detail::Overflow&) {
    return rank_q_sparse<mpz_class>(m);
  }
}

std::size_t rank_mod_p(const SparseMatrix& m, std::uint32_t p) {
  if (!is_prime(p)) throw InvalidInput("rank_mod_p needs a prime modulus");
  detail::SparseEliminator<detail::ModPolicy> el(m, detail::ModPolicy{static_cast<std::int64_t>(p)}, p);
  return el.run();
}

std::size_t rank_over_field(const SparseMatrix& m, const Ring& field) {
  switch (field.kind) {
    case RingKind::Rationals: return rank_over_Q(m);
    case RingKind::PrimeField: return rank_mod_p(m, field.p);
    case RingKind::Integers: break;
  }
  throw InvalidInput("rank_over_field needs Q or F_p");
}

std::string HomologySummary::str() const {
  std::ostringstream os;
  bool any = false;
  if (free_rank) {
    os << "Z^" << free_rank;
    any = true;
  }
  for (auto& t : torsion) {
    os << (any ? " + " : "") << "Z/" << t.get_str();
    any = true;
  }
  if (!any) os << "0";
  if (!exact) os << " (kernel only)";
  return os.str();
}

HomologySummary homology_from_ranks(std::uint64_t dim, std::uint64_t rank_out,
                                    const std::vector<mpz_class>& in_factors, bool over_field) {
  if (rank_out + in_factors.size() > dim)
    throw InternalInconsistency("ranks exceed dimension: d^2 != 0 or mismatched blocks");
  HomologySummary h;
  h.free_rank = dim - rank_out - in_factors.size();
  if (!over_field)
    for (auto& f : in_factors)
      if (f > 1) h.torsion.push_back(f);
  return h;
}

HomologySummary homology_at(const SparseMatrix& d_in, const SparseMatrix& d_out, const Ring& ring,
                            const std::string& where) {
  if (d_in.rows() != d_out.cols())
    throw InternalInconsistency("homology_at: incompatible shapes" + (where.empty() ? "" : " at " + where));
  auto prod = multiply(d_out, d_in, ring.modulus());
  if (!prod.is_zero())
    throw InternalInconsistency("d_out * d_in != 0" + (where.empty() ? "" : " at " + where));
  const std::uint64_t dim = d_out.cols();
  if (ring.is_field()) {
    std::size_t r_in = rank_over_field(d_in, ring), r_out = rank_over_field(d_out, ring);
    HomologySummary h;
    h.free_rank = dim - r_in - r_out;
    return h;
  }
  auto f_in = smith_normal_form(d_in);
  return homology_from_ranks(dim, rank_over_Q(d_out), f_in, false);
}

}  // namespace tlh
