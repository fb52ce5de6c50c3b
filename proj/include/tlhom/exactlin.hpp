#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "tlhom/diagrams.hpp"

namespace tlh {

struct InternalInconsistency : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class RingKind { Integers, Rationals, PrimeField };

/** Coefficient ring R together with the loop parameter a in R. */
struct Ring {
  RingKind kind = RingKind::Integers;
  std::uint32_t p = 0;
  std::int64_t a = 0;  // stored reduced into [0,p) over F_p

  static Ring Z(std::int64_t a = 0) { return {RingKind::Integers, 0, a}; }
  static Ring Q(std::int64_t a = 0) { return {RingKind::Rationals, 0, a}; }
  static Ring Fp(std::uint32_t p, std::int64_t a = 0);

  bool is_field() const { return kind != RingKind::Integers; }
  bool a_is_zero() const { return a == 0; }
  /** Weight grading is available exactly when a = 0 in R. */
  bool graded() const { return a_is_zero(); }
  std::uint32_t modulus() const { return kind == RingKind::PrimeField ? p : 0; }
  std::string name() const;
  /** Parses "Z", "Q", "F2", "Fp:3", "F_5". */
  static Ring parse(const std::string& text, std::int64_t a);

  /** a^k as a matrix entry (reduced mod p when relevant). */
  std::int64_t a_power(int k) const;
  std::int64_t reduce(std::int64_t v) const;

  mpq_class normalize(const mpq_class& x) const;
  bool is_unit(const mpq_class& x) const;
  mpq_class inverse(const mpq_class& x) const;
};

bool is_prime(std::uint64_t p);

/** Integer-valued sparse matrix in compressed column form. */
class SparseMatrix {
 public:
  struct Triplet {
    std::uint32_t row, col;
    std::int64_t value;
  };

  SparseMatrix() = default;
  SparseMatrix(std::uint32_t rows, std::uint32_t cols) : rows_(rows), cols_(cols), col_ptr_(cols + 1, 0) {}

  /** Sums duplicates and drops zeros; reduces into [0,p) when modulus > 0. */
  static SparseMatrix from_triplets(std::uint32_t rows, std::uint32_t cols, std::vector<Triplet> t,
                                    std::uint32_t modulus = 0);
  static SparseMatrix from_dense(const std::vector<std::vector<std::int64_t>>& rows_data);

  std::uint32_t rows() const { return rows_; }
  std::uint32_t cols() const { return cols_; }
  std::size_t nnz() const { return val_.size(); }
  std::int64_t at(std::uint32_t r, std::uint32_t c) const;

  // column access
  std::uint32_t col_begin(std::uint32_t c) const { return col_ptr_[c]; }
  std::uint32_t col_end(std::uint32_t c) const { return col_ptr_[c + 1]; }
  std::uint32_t row_index(std::uint32_t k) const { return row_idx_[k]; }
  std::int64_t value(std::uint32_t k) const { return val_[k]; }

  std::vector<Triplet> triplets() const;
  SparseMatrix transpose() const;
  SparseMatrix permuted(const std::vector<std::uint32_t>& row_perm, const std::vector<std::uint32_t>& col_perm) const;
  bool is_zero() const { return val_.empty(); }
  bool operator==(const SparseMatrix& o) const = default;

 private:
  std::uint32_t rows_ = 0, cols_ = 0;
  std::vector<std::uint32_t> col_ptr_{0};
  std::vector<std::uint32_t> row_idx_;
  std::vector<std::int64_t> val_;
};

/** Product A*B with exact 128-bit accumulation (modulus > 0 reduces mod p). */
SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b, std::uint32_t modulus = 0);

/** Invariant factors d_1 | d_2 | ... | d_r of an integer matrix, r = rank. */
std::vector<mpz_class> smith_normal_form(const SparseMatrix& m);

/** Rank over Q (modulus 0) or over F_p. */
std::size_t rank_over_field(const SparseMatrix& m, const Ring& field);
std::size_t rank_mod_p(const SparseMatrix& m, std::uint32_t p);
std::size_t rank_over_Q(const SparseMatrix& m);

/** Smith normal form of a dense integer matrix (classic algorithm). */
std::vector<mpz_class> dense_smith(std::vector<std::vector<mpz_class>> a);

/** Basis (as rows) of the integer kernel {x : A x = 0} of a dense matrix. */
std::vector<std::vector<mpz_class>> integer_kernel(const std::vector<std::vector<mpz_class>>& a, std::size_t cols);

/** Sorts a multiset of nonzero diagonal entries into an invariant-factor chain. */
std::vector<mpz_class> normalize_diagonal(std::vector<mpz_class> diag);

struct HomologySummary {
  std::uint64_t free_rank = 0;
  std::vector<mpz_class> torsion;  // each > 1, divisibility chain
  bool exact = true;               // false: incoming boundary unknown (kernel only)

  bool is_zero() const { return free_rank == 0 && torsion.empty(); }
  std::string str() const;
  bool operator==(const HomologySummary& o) const {
    return free_rank == o.free_rank && torsion == o.torsion;
  }
};

/**
 * Homology at the middle of C_{q+1} --d_in--> C_q --d_out--> C_{q-1}.
 * Throws InternalInconsistency when d_out * d_in != 0.
 */
HomologySummary homology_at(const SparseMatrix& d_in, const SparseMatrix& d_out, const Ring& ring,
                            const std::string& where = "");

/** Homology from precomputed data: dimension of C_q, rank of d_out and the invariant factors of d_in. */
HomologySummary homology_from_ranks(std::uint64_t dim, std::uint64_t rank_out,
                                    const std::vector<mpz_class>& in_factors, bool over_field);

}  // namespace tlh
