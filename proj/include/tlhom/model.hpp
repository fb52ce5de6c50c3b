#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "tlhom/chaincore.hpp"

namespace tlh {

/** A word in the generators x_1, x_3, ..., stored as the odd subscripts. */
using Word = std::vector<int>;

int word_degree(const Word& w);
int word_weight(const Word& w);
std::string word_str(const Word& w);

class ModelElement {
 public:
  explicit ModelElement(Ring ring = Ring::Q()) : ring_(ring) {}
  static ModelElement word(Ring ring, Word w, mpq_class c = 1);
  static ModelElement generator(Ring ring, int subscript, mpq_class c = 1) { return word(ring, {subscript}, c); }

  const Ring& ring() const { return ring_; }
  const std::map<Word, mpq_class>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  mpq_class coefficient(const Word& w) const;

  void add(const Word& w, const mpq_class& c);
  ModelElement& operator+=(const ModelElement& o);
  ModelElement operator+(const ModelElement& o) const;
  ModelElement operator-(const ModelElement& o) const;
  ModelElement scaled(const mpq_class& c) const;
  /** Concatenation product. */
  ModelElement operator*(const ModelElement& o) const;
  bool operator==(const ModelElement& o) const { return terms_ == o.terms_; }

  /** Bidegree when homogeneous. */
  std::optional<std::pair<int, int>> bidegree() const;
  std::string str() const;

 private:
  Ring ring_;
  std::map<Word, mpq_class> terms_;
};

/** Values of a derivation on generators; extended by the Koszul-signed Leibniz rule. */
using GeneratorImages = std::map<int, ModelElement>;

ModelElement apply_derivation(const GeneratorImages& g, const ModelElement& x);

/** d(x_1) = a, d(x_{2i-1}) = sum_{j+k=i} binom(i,j) x_{2j-1} x_{2k-1}. */
GeneratorImages model_generator_images(int n, const Ring& ring);
ModelElement model_d(const ModelElement& x, int n);

/** Words of bidegree (d,w) in x_1..x_{2n-1}, lexicographic. */
std::vector<Word> model_basis(int n, int d, int w);
/** Words of total degree d, any weight. */
std::vector<Word> model_basis_degree(int n, int d);

struct WordComplex {
  Complex complex;
  std::map<BlockKey, std::vector<Word>> words;
};

/**
 * Tensor algebra on x_1..x_{2n-1} with the differential given by a
 * derivation; blocked by weight when every generator image preserves it.
 */
WordComplex build_derivation_complex(int n, const GeneratorImages& g, const Ring& ring, int d_max,
                                     const std::string& id);

WordComplex build_model_complex(int n, const Ring& ring, int d_max);

/** z_0 = sum binom(n+1,j) x_{2j-1} x_{2k-1} in bidegree (2n, n+1). */
ModelElement model_z0(int n, const Ring& ring);
mpz_class z0_content(int n);

struct CycleRankReport {
  std::size_t rank = 0;
  bool contains_z0 = false;
};
/** Integer kernel of d at bidegree (2n, n+1). */
CycleRankReport cycles_at_top(int n);

struct QuotientReport {
  HomologySummary homology;       // at (2n, n+1) in M(2n) (x)_{M(2n-2)} Z
  std::vector<Word> basis;        // basis of that block
  mpq_class z0_coefficient;       // coefficient of x_1 x_{2n-1} in the image of z_0
  bool z0_image_is_single_term = false;
};
QuotientReport quotient_detection(int n);

using DefiningSystem = std::map<std::pair<int, int>, ModelElement>;

struct MasseyResult {
  bool defined = false;
  std::string report;  // obstruction or first violated condition
  std::pair<int, int> violated{-1, -1};
  DefiningSystem system;
  ModelElement value;
  bool unique = false;  // every entry with k-j >= 2 is forced (d injective on its bidegree)
};

/** Checks a defining system for <zeta_1,...,zeta_i> with May's conventions and returns sum abar_{0,l} a_{l,i}. */
MasseyResult massey_general(int n, int arity, const DefiningSystem& sys);

/** <Phi,...,Phi> (arity i) in M(2n) from a_{j,k} = x_{2(k-j)-1}/(k-j)!. */
MasseyResult massey_power(int n, const Ring& ring, int arity);

/** The coalgebra C_n = R{1, x_1, ..., x_{2n-1}}. Element 0 is 1, element i is x_{2i-1}. */
struct CnCoalgebra {
  int n = 1;
  Ring ring;
  // psi[i] = list of (j, k, coefficient) with x_{2j-1} (x) x_{2k-1}, index 0 meaning 1
  std::vector<std::vector<std::tuple<int, int, std::int64_t>>> psi;

  static CnCoalgebra make(int n, const Ring& ring);
  std::int64_t counit(int i) const { return i == 0 ? 1 : 0; }
  bool coassociative() const;
  bool counital() const;
};

/** Cobar(R, C_n, R) built from the coproduct table; throws when it differs from the model. */
WordComplex cobar_of_Cn(int n, const Ring& ring, int d_max);
/** Exact comparison of bases and matrices; empty string when identical. */
std::string compare_word_complexes(const WordComplex& a, const WordComplex& b);

/** beta(x_1) = 0, beta(x_3) = x_1^2 over F_2. */
GeneratorImages bockstein_images();
WordComplex bockstein_complex_2n4(int d_max);

}  // namespace tlh
