#include <doctest.h>

#include "tlhom/cupcx.hpp"
#include "tlhom/loops.hpp"
#include "tlhom/model.hpp"

using namespace tlh;

namespace {

using MpzDense = std::vector<std::vector<mpz_class>>;

MpzDense to_dense(const SparseMatrix& m) {
  MpzDense a(m.rows(), std::vector<mpz_class>(m.cols(), 0));
  for (auto& t : m.triplets()) a[t.row][t.col] = t.value;
  return a;
}

// Coordinates of each column of y in the row basis k (rational solve, exact).
MpzDense coordinates(const MpzDense& k, const MpzDense& y, std::size_t n) {
  const std::size_t r = k.size(), cols = y.empty() ? 0 : y[0].size();
  // augmented system: k^T c = y, an n x (r + cols) matrix
  std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(r + cols));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < r; ++j) a[i][j] = k[j][i];
    for (std::size_t c = 0; c < cols; ++c) a[i][r + c] = y[i][c];
  }
  std::vector<std::size_t> piv;
  std::size_t row = 0;
  for (std::size_t c = 0; c < r && row < n; ++c) {
    std::size_t p = row;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) continue;
    std::swap(a[p], a[row]);
    mpq_class inv = 1 / a[row][c];
    for (auto& x : a[row]) x *= inv;
    for (std::size_t i = 0; i < n; ++i)
      if (i != row && a[i][c] != 0) {
        mpq_class f = a[i][c];
        for (std::size_t j = 0; j < r + cols; ++j) a[i][j] -= f * a[row][j];
      }
    piv.push_back(c);
    ++row;
  }
  REQUIRE(piv.size() == r);
  for (std::size_t i = row; i < n; ++i)
    for (std::size_t c = 0; c < cols; ++c) REQUIRE(a[i][r + c] == 0);
  MpzDense out(r, std::vector<mpz_class>(cols));
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t c = 0; c < cols; ++c) {
      REQUIRE(a[j][r + c].get_den() == 1);
      out[j][c] = a[j][r + c].get_num();
    }
  return out;
}

// Homology as Z^r / (image in kernel coordinates).
HomologySummary lattice_homology(const Complex& c, BlockKey k) {
  const std::size_t n = c.dim(k);
  MpzDense kernel;
  if (auto* out = c.differential(k); out && out->rows() > 0) {
    kernel = integer_kernel(to_dense(*out), n);
  } else {
    kernel.assign(n, std::vector<mpz_class>(n, 0));
    for (std::size_t i = 0; i < n; ++i) kernel[i][i] = 1;
  }
  HomologySummary h;
  if (kernel.empty()) return h;
  MpzDense img;
  if (auto* in = c.differential({k.q + 1, k.w}); in && in->cols() > 0) img = coordinates(kernel, to_dense(*in), n);
  std::vector<mpz_class> f = img.empty() ? std::vector<mpz_class>{} : dense_smith(img);
  h.free_rank = kernel.size() - f.size();
  for (auto& x : f)
    if (x > 1) h.torsion.push_back(x);
  return h;
}

void compare_with_lattice(const Complex& c, int q_max) {
  auto t = homology_table(c, q_max);
  for (auto& [k, h] : t.entries) {
    if (!h.exact) continue;
    INFO(c.id << " " << block_name(k));
    CHECK(h == lattice_homology(c, k));
  }
}

Complex column(std::vector<std::size_t> dims, std::vector<std::vector<std::vector<std::int64_t>>> maps) {
  Complex c;
  c.ring = Ring::Z();
  c.id = "hand";
  c.bottom = 0;
  c.top = static_cast<int>(dims.size());
  for (std::size_t q = 0; q < dims.size(); ++q) {
    auto& b = c.basis[{static_cast<int>(q), kAllWeights}];
    for (std::size_t i = 0; i < dims[q]; ++i) b.push_back(i);
  }
  for (std::size_t q = 1; q < dims.size(); ++q) {
    auto m = maps[q - 1].empty() ? SparseMatrix(static_cast<std::uint32_t>(dims[q - 1]), static_cast<std::uint32_t>(dims[q]))
                                 : SparseMatrix::from_dense(maps[q - 1]);
    c.d[{static_cast<int>(q), kAllWeights}] = m;
  }
  return c;
}

}  // namespace

TEST_CASE("d squared check finds a corrupted matrix") {
  LoopsSpec s;
  s.two_n = 4;
  s.q_max = 4;
  s.weighted = true;
  auto c = build_loops_complex(s);
  CHECK(check_d_squared(c).ok);
  auto wc = build_model_complex(3, Ring::Z(), 10);
  CHECK(check_d_squared(wc.complex).ok);
  auto bad = column({1, 1, 1}, {{{1}}, {{1}}});
  auto rep = check_d_squared(bad);
  CHECK(!rep.ok);
  REQUIRE(!rep.violations.empty());
  CHECK(rep.violations[0].find("witness") != std::string::npos);
  CHECK_THROWS_AS(homology_table(bad, 2), InternalInconsistency);
}

TEST_CASE("homology of hand-made complexes") {
  auto c = column({1, 1}, {{{2}}});
  auto t = homology_table(c, 1);
  CHECK(t.total(0).torsion == std::vector<mpz_class>{2});
  CHECK(t.total(1).is_zero());
  Complex empty;
  CHECK(homology_table(empty, 3).entries.empty());
  auto z = column({1, 1}, {{{1}}});
  CHECK(homology_table(z, 1).total(0).is_zero());
}

TEST_CASE("H_0 of L(4;Z,3) is Z/3") {
  LoopsSpec s;
  s.two_n = 4;
  s.ring = Ring::Z(3);
  s.q_max = 1;
  auto t = homology_table(build_loops_complex(s), 0);
  CHECK(t.total(0).free_rank == 0);
  CHECK(t.total(0).torsion == std::vector<mpz_class>{3});
}

TEST_CASE("totalization") {
  auto single = column({1, 2}, {{{1, -1}}});
  auto tot = totalize({single}, {});
  CHECK(tot.dim(0) == 1);
  CHECK(tot.dim(1) == 2);
  CHECK(homology_table(tot, 1).total(0) == homology_table(single, 1).total(0));

  auto zcol = column({1}, {});
  zcol.top = 1;
  ChainMap id;
  id[{0, kAllWeights}] = SparseMatrix::from_dense({{1}});
  auto acyclic = totalize({zcol, zcol}, {id});
  auto t = homology_table(acyclic, 1);
  CHECK(t.total(0).is_zero());
  CHECK(t.total(1).is_zero());

  // Out_q(4) as single-degree columns joined by the undashing maps
  auto out = build_out_complex(4);
  std::vector<Complex> cols;
  std::vector<ChainMap> conn;
  for (int q = 0; q <= 2; ++q) {
    Complex col;
    col.ring = Ring::Z();
    col.id = "Out_" + std::to_string(q);
    col.top = 100;
    col.basis[{0, kAllWeights}] = out.basis.at({q, kAllWeights});
    cols.push_back(col);
    if (q > 0) conn.push_back({{{0, kAllWeights}, out.d.at({q, kAllWeights})}});
  }
  auto tt = totalize(cols, conn);
  auto th = homology_table(tt, 2);
  for (int q = 0; q <= 2; ++q) CHECK(th.total(q).is_zero());

  ChainMap wrong;
  wrong[{0, kAllWeights}] = SparseMatrix::from_dense({{1}, {1}});
  CHECK_THROWS_AS(totalize({zcol, zcol}, {wrong}), InvalidInput);
}

TEST_CASE("homology agrees with the kernel-lattice method") {
  compare_with_lattice(build_model_complex(2, Ring::Z(), 9).complex, 8);
  compare_with_lattice(build_model_complex(3, Ring::Z(), 8).complex, 7);
  compare_with_lattice(build_model_complex(2, Ring::Z(3), 7).complex, 6);
  LoopsSpec s;
  s.two_n = 2;
  s.q_max = 6;
  s.weighted = true;
  compare_with_lattice(build_loops_complex(s), 5);
  s.two_n = 4;
  s.q_max = 3;
  compare_with_lattice(build_loops_complex(s), 3);
  s.weighted = false;
  s.ring = Ring::Z(2);
  s.q_max = 3;
  compare_with_lattice(build_loops_complex(s), 2);
  for (int two_n = 2; two_n <= 6; two_n += 2) {
    auto c = build_out_complex(two_n);
    compare_with_lattice(c, c.top);
  }
}

TEST_CASE("Poincare series extraction") {
  auto t = homology_table(build_model_complex(2, Ring::Z(), 6).complex, 5);
  CHECK(poincare_by_degree(t, PoincareKind::torsion_dim_p, 2, 2, 5) == std::vector<long>{1, 1, 1, 2});
  CHECK(poincare_by_degree(t, PoincareKind::free_rank, 0, 0, 5) == std::vector<long>{1, 1, 0, 0, 1, 1});
  HomologyTable zero;
  zero.entries[{0, kAllWeights}] = {};
  zero.entries[{1, kAllWeights}] = {};
  CHECK(poincare_by_degree(zero, PoincareKind::free_rank, 0, 0, 1) == std::vector<long>{0, 0});
  LoopsSpec s;
  s.two_n = 4;
  s.q_max = 5;
  s.weighted = true;
  auto lt = homology_table(build_loops_complex(s), 4);
  CHECK(poincare_by_degree(lt, PoincareKind::torsion_dim_p, 2, 2, 4) == std::vector<long>{1, 1, 1});
  CHECK(poincare_by_degree(lt, PoincareKind::free_rank, 0, 0, 4) == std::vector<long>{1, 1, 0, 0, 1});
}

TEST_CASE("table export formats") {
  auto t = homology_table(build_model_complex(2, Ring::Z(), 4).complex, 3).collapsed();
  auto csv = t.csv();
  CHECK(csv.rfind("q,w,free_rank,torsion_rank,torsion,exact", 0) == 0);
  CHECK(csv.find("2,ALL,0,1,2,1") != std::string::npos);
  CHECK(t.json().find("\"torsion\"") != std::string::npos);
  CHECK(t.aligned().find("free") != std::string::npos);
}
