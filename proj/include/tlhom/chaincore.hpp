#pragma once

#include <climits>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "tlhom/exactlin.hpp"

namespace tlh {

/** Weight key used by ungraded complexes. */
constexpr int kAllWeights = INT_MIN;

struct BlockKey {
  int q;
  int w;
  auto operator<=>(const BlockKey&) const = default;
};

std::string block_name(BlockKey k);

/**
 * Bigraded chain complex of free modules with labeled bases.
 * d[(q,w)] maps block (q,w) to block (q-1,w); its row count is the
 * dimension of (q-1,w), zero when that block is absent.
 */
struct Complex {
  Ring ring;
  std::string id;
  bool weighted = false;
  int bottom = 0;  // lowest degree carrying basis data
  int top = 0;     // highest degree whose basis and incoming differential are built
  std::map<BlockKey, std::vector<std::uint64_t>> basis;
  std::map<BlockKey, SparseMatrix> d;
  std::function<std::string(int, std::uint64_t)> describe;

  std::size_t dim(BlockKey k) const;
  std::size_t dim(int q) const;
  const SparseMatrix* differential(BlockKey k) const;
  std::vector<int> weights() const;
  std::string label(BlockKey k, std::size_t i) const;
};

struct DSquaredReport {
  bool ok = true;
  std::vector<std::string> violations;
};

DSquaredReport check_d_squared(const Complex& c);

struct HomologyTable {
  std::string id;
  Ring ring;
  int q_max = 0;
  std::map<BlockKey, HomologySummary> entries;

  /** Direct sum over weights in degree q. */
  HomologySummary total(int q) const;
  /** One entry per degree, weights summed. */
  HomologyTable collapsed() const;
  /** Entries of weight w only. */
  HomologyTable only_weight(int w) const;
  std::string aligned() const;
  std::string csv() const;
  std::string json() const;
};

/** Invariant factors (over Z) or a run of 1s of length rank (over a field), cached on disk when enabled. */
std::vector<mpz_class> block_factors(const Complex& c, BlockKey k);

HomologyTable homology_table(const Complex& c, int q_max);

/** A chain map between two complexes with identical block keys: per block, a matrix into the target block. */
using ChainMap = std::map<BlockKey, SparseMatrix>;

/**
 * Total complex of [C_0 <- C_1 <- ... <- C_P]. Column p is shifted up by p;
 * its internal differential is multiplied by (-1)^p. connecting[p-1] maps C_p to C_{p-1}.
 */
Complex totalize(const std::vector<Complex>& columns, const std::vector<ChainMap>& connecting);

enum class PoincareKind { free_rank, torsion_dim_p };
std::map<BlockKey, long> poincare_coefficients(const HomologyTable& t, PoincareKind kind, unsigned p = 2);

/** Degree-wise sums of poincare_coefficients. */
std::vector<long> poincare_by_degree(const HomologyTable& t, PoincareKind kind, unsigned p, int q_lo, int q_hi);

}  // namespace tlh
