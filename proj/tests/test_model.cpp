#include <doctest.h>

#include <numeric>

#include "tlhom/model.hpp"

using namespace tlh;

namespace {

mpz_class binom(int n, int k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

// Differential written out word by word: every generator is odd, so the
// Leibniz sign at position p is (-1)^p.
std::map<Word, mpz_class> oracle_d(const Word& w, int n, int a) {
  std::map<Word, mpz_class> out;
  for (std::size_t p = 0; p < w.size(); ++p) {
    const int sign = p % 2 ? -1 : 1;
    const int i = (w[p] + 1) / 2;
    Word pre(w.begin(), w.begin() + p), post(w.begin() + p + 1, w.end());
    if (i == 1) {
      if (a == 0) continue;
      Word v = pre;
      v.insert(v.end(), post.begin(), post.end());
      out[v] += sign * a;
      continue;
    }
    for (int j = 1; j < i; ++j) {
      Word v = pre;
      v.push_back(2 * j - 1);
      v.push_back(2 * (i - j) - 1);
      v.insert(v.end(), post.begin(), post.end());
      out[v] += sign * binom(i, j);
    }
  }
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

// Words of degree d by direct recursion over the last letter.
std::size_t count_words(int n, int d) {
  if (d == 0) return 1;
  std::size_t s = 0;
  for (int i = 1; i <= n; ++i)
    if (2 * i - 1 <= d) s += count_words(n, d - (2 * i - 1));
  return s;
}

HomologyTable model_homology(int n, const Ring& ring, int d_max) {
  return homology_table(build_model_complex(n, ring, d_max + 1).complex, d_max);
}

}  // namespace

TEST_CASE("model bases") {
  CHECK(model_basis(1, 1, 1) == std::vector<Word>{{1}});
  CHECK(model_basis(2, 4, 3) == std::vector<Word>{{1, 3}, {3, 1}});
  CHECK(model_basis(2, 2, 2) == std::vector<Word>{{1, 1}});
  CHECK(model_basis(2, 3, 1).empty());
  for (int n = 1; n <= 4; ++n)
    for (int d = 0; d <= 9; ++d) CHECK(model_basis_degree(n, d).size() == count_words(n, d));
  CHECK(word_degree({1, 3, 5}) == 9);
  CHECK(word_weight({1, 3, 5}) == 6);
}

TEST_CASE("model differential matches the word-by-word formula") {
  for (int n = 1; n <= 3; ++n)
    for (int a = 0; a <= 2; ++a)
      for (int d = 1; d <= 7; ++d)
        for (auto& w : model_basis_degree(n, d)) {
          const auto got = model_d(ModelElement::word(Ring::Z(a), w), n);
          std::map<Word, mpz_class> g;
          for (auto& [v, c] : got.terms()) {
            REQUIRE(c.get_den() == 1);
            g[v] = c.get_num();
          }
          CHECK(g == oracle_d(w, n, a));
        }
  auto x3 = model_d(ModelElement::generator(Ring::Z(), 3), 2);
  CHECK(x3 == ModelElement::word(Ring::Z(), {1, 1}, 2));
}

TEST_CASE("d squared vanishes on the model") {
  for (int n = 1; n <= 5; ++n)
    for (int a = 0; a <= 3; ++a) {
      auto wc = build_model_complex(n, Ring::Z(a), 12);
      INFO("n=" << n << " a=" << a);
      CHECK(check_d_squared(wc.complex).ok);
    }
}

TEST_CASE("homology of M(2) is Z in every degree") {
  auto t = model_homology(1, Ring::Z(), 12);
  for (int q = 0; q <= 12; ++q) CHECK(t.total(q) == HomologySummary{1, {}, true});
}

TEST_CASE("rational homology of M(4) and M(6)") {
  auto t = model_homology(2, Ring::Q(), 9);
  for (int q = 0; q <= 9; ++q) CHECK(t.total(q).free_rank == (q % 4 == 0 || q % 4 == 1 ? 1u : 0u));
  auto t6 = model_homology(3, Ring::Q(), 9);
  for (int q = 0; q <= 9; ++q) CHECK(t6.total(q).free_rank == (q == 0 || q == 1 || q == 6 || q == 7 ? 1u : 0u));
  CHECK(t6.entries.at({6, 4}).free_rank == 1);
  CHECK(t6.entries.at({7, 5}).free_rank == 1);
}

TEST_CASE("homology with an invertible or prime parameter") {
  auto t = model_homology(2, Ring::Z(3), 9);
  for (int q = 0; q <= 9; ++q) {
    const bool hit = q % 4 == 0;
    CHECK(t.total(q).free_rank == 0);
    CHECK(t.total(q).torsion == (hit ? std::vector<mpz_class>{3} : std::vector<mpz_class>{}));
  }
  auto t1 = model_homology(2, Ring::Z(1), 8);
  for (int q = 0; q <= 8; ++q) CHECK(t1.total(q).is_zero());
}

TEST_CASE("Massey powers of Phi") {
  auto m3 = massey_power(2, Ring::Q(), 3);
  REQUIRE(m3.defined);
  CHECK(m3.unique);
  ModelElement e3(Ring::Q());
  e3.add({1, 3}, mpq_class(1, 2));
  e3.add({3, 1}, mpq_class(1, 2));
  CHECK(m3.value == e3);
  CHECK(m3.value.str() == "1/2*x1x3 + 1/2*x3x1");
  CHECK(m3.value.bidegree() == std::make_pair(4, 3));

  for (int i = 3; i <= 5; ++i) {
    auto m = massey_power(i - 1, Ring::Q(), i);
    REQUIRE(m.defined);
    ModelElement e(Ring::Q());
    mpz_class fact = 1;
    for (int k = 2; k <= i; ++k) fact *= k;
    for (int j = 1; j < i; ++j) e.add({2 * j - 1, 2 * (i - j) - 1}, mpq_class(binom(i, j), fact));
    CHECK(m.value == e);
    CHECK(model_d(m.value, i - 1).is_zero());
  }
  auto over = massey_power(1, Ring::Q(), 3);
  CHECK(!over.defined);
  CHECK(!over.report.empty());
}

TEST_CASE("a bad defining system is rejected at the first broken entry") {
  const Ring q = Ring::Q();
  DefiningSystem sys;
  sys.emplace(std::make_pair(0, 1), ModelElement::generator(q, 1));
  sys.emplace(std::make_pair(1, 2), ModelElement::generator(q, 1));
  sys.emplace(std::make_pair(2, 3), ModelElement::generator(q, 1));
  sys.emplace(std::make_pair(0, 2), ModelElement::generator(q, 3));
  sys.emplace(std::make_pair(1, 3), ModelElement::generator(q, 3, mpq_class(1, 2)));
  auto r = massey_general(2, 3, sys);
  CHECK(!r.defined);
  CHECK(r.violated == std::make_pair(0, 2));
  CHECK_THROWS_AS(massey_general(2, 1, sys), InvalidInput);
}

TEST_CASE("gamma as a matric Massey product") {
  const Ring z = Ring::Z();
  DefiningSystem sys;
  sys.emplace(std::make_pair(0, 1), ModelElement::generator(z, 1));
  sys.emplace(std::make_pair(1, 2), ModelElement::generator(z, 1, 2));
  sys.emplace(std::make_pair(2, 3), ModelElement::generator(z, 1));
  sys.emplace(std::make_pair(0, 2), ModelElement::generator(z, 3));
  sys.emplace(std::make_pair(1, 3), ModelElement::generator(z, 3));
  auto g = massey_general(2, 3, sys);
  REQUIRE(g.defined);
  CHECK(g.value == ModelElement::word(z, {1, 3}) + ModelElement::word(z, {3, 1}));
  CHECK(model_d(g.value, 2).is_zero());
  // H_{4,3}(M(4;Z,0)) is free of rank one, so gamma is twice the generator alpha.
  auto t = model_homology(2, Ring::Z(), 5);
  CHECK(t.entries.at({4, 3}) == HomologySummary{1, {}, true});
}

TEST_CASE("integral homology of M(4)") {
  auto t = model_homology(2, Ring::Z(), 10);
  const std::vector<std::size_t> free = {1, 1, 0, 0, 1, 1, 0, 0, 1, 1, 0};
  // t^2/((1-t-t^3)(1-t^4)) by the recursion c_d = c_{d-1} + c_{d-3} + c_{d-4} - c_{d-5} - c_{d-7}
  std::vector<long> tors(11, 0);
  std::vector<long> f(11, 0);
  for (int d = 0; d <= 10; ++d) f[d] = d == 0 ? 1 : f[d - 1] + (d >= 3 ? f[d - 3] : 0);
  for (int d = 0; d <= 10; ++d)
    for (int k = 0; 4 * k + 2 <= d; ++k) tors[d] += f[d - 2 - 4 * k];
  CHECK(tors[2] == 1);
  CHECK(tors[5] == 2);
  for (int q = 0; q <= 10; ++q) {
    INFO("q=" << q);
    auto h = t.total(q);
    CHECK(h.free_rank == free[q]);
    CHECK(static_cast<long>(h.torsion.size()) == tors[q]);
    for (auto& x : h.torsion) CHECK(x == 2);
  }
  auto t2 = model_homology(2, Ring::Fp(2), 8);
  for (int q = 0; q <= 8; ++q) CHECK(static_cast<long>(t2.total(q).free_rank) == f[q]);
}

TEST_CASE("cobar of C_n is the model") {
  for (int n = 1; n <= 4; ++n) {
    auto c = CnCoalgebra::make(n, Ring::Z());
    CHECK(c.coassociative());
    CHECK(c.counital());
    CHECK(compare_word_complexes(cobar_of_Cn(n, Ring::Z(), 8), build_model_complex(n, Ring::Z(), 8)).empty());
  }
  auto c3 = CnCoalgebra::make(3, Ring::Z());
  REQUIRE(c3.psi.size() == 4);
  std::int64_t middle = 0;
  for (auto& [j, k, v] : c3.psi[3])
    if (j == 1 && k == 2) middle = v;
  CHECK(middle == 3);
  auto other = build_model_complex(2, Ring::Z(2), 6);
  CHECK(!compare_word_complexes(cobar_of_Cn(2, Ring::Z(), 6), other).empty());
}

TEST_CASE("Bockstein homology") {
  auto g = bockstein_images();
  CHECK(apply_derivation(g, ModelElement::generator(Ring::Fp(2), 1)).is_zero());
  auto bc = bockstein_complex_2n4(8);
  auto t = homology_table(bc.complex, 7);
  const std::vector<std::size_t> dims = {1, 1, 0, 0, 1, 1, 0, 0};
  for (int q = 0; q <= 7; ++q) CHECK(t.total(q).free_rank == dims[q]);
}

TEST_CASE("the cycle z0 and its detection") {
  for (int n = 2; n <= 5; ++n) {
    auto z0 = model_z0(n, Ring::Z());
    CHECK(z0.bidegree() == std::make_pair(2 * n, n + 1));
    CHECK(model_d(z0, n).is_zero());
    mpz_class g = 0;
    for (int j = 1; j <= n; ++j) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), binom(n + 1, j).get_mpz_t());
    CHECK(z0_content(n) == g);
    auto c = cycles_at_top(n);
    CHECK(c.rank == 1);
    CHECK(c.contains_z0);
    auto q = quotient_detection(n);
    CHECK(q.z0_coefficient == n + 1);
    CHECK(q.z0_image_is_single_term);
    CHECK(q.homology == HomologySummary{1, {}, true});
  }
  CHECK(z0_content(3) == 2);
  CHECK(z0_content(5) == 1);
  CHECK_THROWS_AS(quotient_detection(1), InvalidInput);
}
