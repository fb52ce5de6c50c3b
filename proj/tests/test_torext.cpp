#include <doctest.h>

#include <set>

#include "tlhom/loops.hpp"
#include "tlhom/model.hpp"
#include "tlhom/torext.hpp"

using namespace tlh;

namespace {

HomologyTable tor(int two_n, const Ring& ring, int q_max, bool normalized = true) {
  TorSpec s;
  s.two_n = two_n;
  s.ring = ring;
  s.q_max = q_max;
  s.normalized = normalized;
  return tor_table(s);
}

HomologySummary Zt(std::initializer_list<long> torsion, std::size_t free = 0) {
  HomologySummary h;
  h.free_rank = free;
  for (long t : torsion) h.torsion.emplace_back(t);
  return h;
}

}  // namespace

TEST_CASE("augmentation is multiplicative") {
  for (int two_n = 2; two_n <= 6; two_n += 2)
    for (std::int64_t a : {0, 1, 2}) CHECK(augmentation_multiplicativity(two_n, Ring::Z(a)).empty());
}

TEST_CASE("Tor over TL_4(Z,0) through degree 4") {
  auto t = tor(4, Ring::Z(), 4);
  CHECK(t.total(0) == Zt({}, 1));
  CHECK(t.total(1).is_zero());
  CHECK(t.total(2).is_zero());
  CHECK(t.total(3) == Zt({}, 1));
  CHECK(t.total(4) == Zt({}, 1));
}

TEST_CASE("Tor with a nonzero parameter") {
  auto t1 = tor(4, Ring::Z(1), 3);
  for (int q = 1; q <= 3; ++q) CHECK(t1.total(q).is_zero());
  CHECK(t1.total(0) == Zt({}, 1));
  auto t3 = tor(4, Ring::Z(3), 4);
  CHECK(t3.total(1).is_zero());
  CHECK(t3.total(2).is_zero());
  CHECK(t3.total(3) == Zt({3}));
  CHECK(t3.total(4).is_zero());
}

TEST_CASE("normalized and unreduced bar constructions agree") {
  auto n = tor(2, Ring::Z(), 4, true);
  auto u = tor(2, Ring::Z(), 4, false);
  for (int q = 0; q <= 4; ++q) {
    CHECK(n.total(q) == u.total(q));
    CHECK(n.total(q) == Zt({}, 1));
  }
}

TEST_CASE("Tor over F_2 by resolution agrees with the bar complex") {
  auto r = tor_by_resolution(4, Ring::Fp(2), 6);
  REQUIRE(r.tor_dims.size() == 7);
  auto bar = tor(4, Ring::Fp(2), 4);
  for (int q = 0; q <= 4; ++q) CHECK(r.tor_dims[q] == bar.total(q).free_rank);
  // shifted homology of L(4;F_2,0), whose dimensions are 1,1,1,2
  const std::vector<std::size_t> expect = {1, 0, 0, 1, 1, 1, 2};
  CHECK(r.tor_dims == expect);
  auto r2 = tor_by_resolution(2, Ring::Fp(3), 5);
  for (int q = 0; q <= 5; ++q) CHECK(r2.tor_dims[q] == 1);
  CHECK_THROWS_AS(tor_by_resolution(4, Ring::Z(), 3), InvalidInput);
}

TEST_CASE("Tor with cell module coefficients is shifted loops homology") {
  TorSpec s;
  s.two_n = 4;
  s.q_max = 4;
  s.normalized = true;
  auto t = tor_with_cell(s);
  LoopsSpec ls;
  ls.two_n = 4;
  ls.q_max = 4;
  auto l = homology_table(build_loops_complex(ls), 3);
  CHECK(t.total(0).is_zero());
  for (int q = 1; q <= 4; ++q) CHECK(t.total(q) == l.total(q - 1));
  s.two_n = 2;
  auto t2 = tor_with_cell(s);
  for (int q = 0; q <= 4; ++q) CHECK(t2.total(q) == Zt({}, 1));
  s.two_n = 4;
  s.ring = Ring::Z(1);
  s.q_max = 2;
  auto t4 = tor_with_cell(s);
  CHECK(t4.total(1).is_zero());
}

TEST_CASE("Ext over truncated polynomial rings matches the model") {
  for (int n : {1, 2, 3}) {
    auto ext = ext_table_truncated_poly(n, Ring::Q(), 9);
    std::set<std::pair<int, int>> from_ext;
    for (auto& e : ext) from_ext.insert({e.d, e.w});
    auto t = homology_table(build_model_complex(n, Ring::Q(), 10).complex, 9);
    std::set<std::pair<int, int>> from_model;
    for (auto& [k, h] : t.entries)
      if (h.free_rank) {
        CHECK(h.free_rank == 1);
        from_model.insert({k.q, k.w});
      }
    CHECK(from_ext == from_model);
  }
  auto e2 = ext_table_truncated_poly(2, Ring::Q(), 9);
  REQUIRE(e2.size() == 6);
  CHECK(e2[2] == ExtEntry{2, 4, 3});
  CHECK_THROWS_AS(ext_table_truncated_poly(3, Ring::Z(), 9), InvalidInput);
  CHECK_THROWS_AS(ext_table_truncated_poly(2, Ring::Fp(2), 9), InvalidInput);
  CHECK(ext_table_truncated_poly(2, Ring::Fp(3), 9).size() == 6);
}

TEST_CASE("the periodic resolution is exact") {
  for (int n : {1, 2, 3}) {
    auto c = periodic_resolution(n, Ring::Z(), 6);
    CHECK(check_d_squared(c).ok);
    auto t = homology_table(c, 5);
    for (auto& [k, h] : t.entries) {
      INFO("n=" << n << " " << block_name(k));
      CHECK(h.is_zero());
    }
  }
}
