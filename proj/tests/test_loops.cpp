#include <doctest.h>

#include <set>

#include "tlhom/loops.hpp"

using namespace tlh;

namespace {

Node L(int i) { return {Side::L, i}; }
Node R(int i) { return {Side::R, i}; }

Diagram empty() { return Diagram::from_partner(0, 0, {}); }

// Every basis element of L(2n)_q as a LoopsElement.
std::vector<LoopsElement> basis_elements(int two_n, int q, const Ring& ring) {
  std::vector<LoopsElement> out;
  for (std::uint64_t k = 0; k < pinned_count(two_n, 0, q); ++k)
    out.push_back(LoopsElement::basis(two_n, 0, ring, pinned_basis(two_n, 0, q, k)));
  return out;
}

// The differential read off the assembled matrix, for comparison with loops_d.
LoopsElement d_from_complex(const Complex& c, int two_n, int q, std::uint64_t idx, const Ring& ring) {
  LoopsElement r(two_n, 0, ring);
  const SparseMatrix* m = c.differential({q, kAllWeights});
  REQUIRE(m != nullptr);
  for (auto k = m->col_begin(static_cast<std::uint32_t>(idx)); k < m->col_end(static_cast<std::uint32_t>(idx)); ++k)
    r.add(pinned_basis(two_n, 0, q - 1, m->row_index(k)), m->value(k));
  return r;
}

}  // namespace

TEST_CASE("dimensions of L(2) and L(4)") {
  for (int q = 1; q <= 8; ++q) CHECK(pinned_count(2, 0, q) == (1ull << (q - 1)));
  CHECK(pinned_count(4, 0, 1) == 4);
  CHECK(pinned_count(4, 0, 3) == 2 * 14 * 14 * 2);
  CHECK(pinned_count(4, 0, 0) == 1);
  LoopsSpec s;
  s.two_n = 4;
  s.q_max = 3;
  auto c = build_loops_complex(s);
  for (int q = 0; q <= 3; ++q) CHECK(c.dim(q) == pinned_count(4, 0, q));
}

TEST_CASE("barwise differential of a basis element of L(4)_3") {
  const Diagram d0 = Diagram::from_arcs(0, 4, {{R(1), R(4)}, {R(2), R(3)}});
  const Diagram d1 = Diagram::from_arcs(4, 4, {{L(3), L(4)}, {L(1), R(3)}, {L(2), R(4)}, {R(1), R(2)}});
  const Diagram d2 = Diagram::from_arcs(4, 4, {{L(2), L(3)}, {L(1), L(4)}, {R(1), R(2)}, {R(3), R(4)}});
  const Diagram d3 = Diagram::from_arcs(4, 0, {{L(1), L(2)}, {L(3), L(4)}});
  const Diagram f0 = Diagram::from_arcs(0, 4, {{R(1), R(2)}, {R(3), R(4)}});
  const Diagram f1 = Diagram::from_arcs(4, 4, {{L(1), L(2)}, {L(3), L(4)}, {R(1), R(2)}, {R(3), R(4)}});
  const Diagram f2 = Diagram::from_arcs(4, 0, {{L(2), L(3)}, {L(1), L(4)}});
  for (std::int64_t a : {0, 2, 3}) {
    const Ring ring = Ring::Z(a);
    auto x = LoopsElement::basis(4, 0, ring, {d0, d1, d2, d3});
    LoopsElement expect(4, 0, ring);
    expect.add({f0, d2, d3}, 1);
    expect.add({d0, f1, d3}, -1);
    expect.add({d0, d1, f2}, a * a);
    CHECK(loops_d(x) == expect);
  }
}

TEST_CASE("juxtaposition product of a 1-bar and a 2-bar element") {
  const Diagram d0 = Diagram::from_arcs(0, 4, {{R(1), R(4)}, {R(2), R(3)}});
  const Diagram d1 = Diagram::from_arcs(4, 0, {{L(1), L(2)}, {L(3), L(4)}});
  const Diagram e0 = Diagram::from_arcs(0, 4, {{R(1), R(2)}, {R(3), R(4)}});
  const Diagram e1 = Diagram::from_arcs(4, 4, {{L(3), L(4)}, {L(1), R(1)}, {L(2), R(4)}, {R(2), R(3)}});
  const Diagram e2 = Diagram::from_arcs(4, 0, {{L(2), L(3)}, {L(1), L(4)}});
  const Diagram mid = Diagram::from_arcs(4, 4, {{L(1), L(2)}, {L(3), L(4)}, {R(1), R(2)}, {R(3), R(4)}});
  auto x = LoopsElement::basis(4, 0, Ring::Z(), {d0, d1});
  auto y = LoopsElement::basis(4, 0, Ring::Z(), {e0, e1, e2});
  CHECK(loops_multiply(x, y) == LoopsElement::basis(4, 0, Ring::Z(), {d0, mid, e1, e2}));
  auto unit = LoopsElement::unit(4, Ring::Z());
  CHECK(loops_multiply(unit, y) == y);
  CHECK(loops_multiply(y, unit) == y);
  CHECK_THROWS_AS(loops_multiply(x, LoopsElement::basis(2, 0, Ring::Z(), {Phi_l(2), Phi_r(2)})), InvalidInput);
}

TEST_CASE("the element Phi") {
  for (int two_n = 2; two_n <= 8; two_n += 2) {
    auto p = phi(two_n, Ring::Z());
    CHECK(loops_d(p).is_zero());
    CHECK(loops_weight(p.terms().begin()->first, 0) == 1);
    for (std::int64_t a : {1, 2, 3}) {
      auto pa = phi(two_n, Ring::Z(a));
      CHECK(loops_d(pa) == LoopsElement::unit(two_n, Ring::Z(a)).scaled(a));
    }
  }
  CHECK_THROWS_AS(phi(0, Ring::Z()), InvalidInput);
  CHECK(loops_weight({empty()}, 0) == 0);
  auto pp = loops_multiply(phi(2, Ring::Z()), phi(2, Ring::Z()));
  REQUIRE(pp.terms().size() == 1);
  auto& [term, coef] = *pp.terms().begin();
  CHECK(coef == 1);
  CHECK(loops_weight(term, 0) == 2);
  CHECK(term[1] == compose(Phi_r(2), Phi_l(2)).diagram);
  CHECK(compose(Phi_r(2), Phi_l(2)).loops == 0);
}

TEST_CASE("assembled matrices agree with the element-level differential") {
  for (std::int64_t a : {0, 2}) {
    const Ring ring = Ring::Z(a);
    LoopsSpec s;
    s.two_n = 4;
    s.ring = ring;
    s.q_max = 3;
    auto c = build_loops_complex(s);
    for (int q = 1; q <= 3; ++q)
      for (std::uint64_t k = 0; k < pinned_count(4, 0, q); k += 7) {
        auto x = LoopsElement::basis(4, 0, ring, pinned_basis(4, 0, q, k));
        CHECK(loops_d(x) == d_from_complex(c, 4, q, k, ring));
      }
  }
}

TEST_CASE("d squared vanishes and the weight is preserved") {
  for (std::int64_t a : {0, 1, 3}) {
    const Ring ring = Ring::Z(a);
    for (int q = 1; q <= 3; ++q)
      for (auto& x : basis_elements(4, q, ring)) CHECK(loops_d(loops_d(x)).is_zero());
  }
  for (int q = 1; q <= 3; ++q)
    for (auto& x : basis_elements(4, q, Ring::Z())) {
      const int w = loops_weight(x.terms().begin()->first, 0);
      const auto dx = loops_d(x);
      for (auto& [p, c] : dx.terms()) CHECK(loops_weight(p, 0) == w);
    }
}

TEST_CASE("graded Leibniz rule") {
  for (int two_n : {2, 4}) {
    for (std::int64_t a : {0, 2}) {
      const Ring ring = Ring::Z(a);
      for (int p = 0; p <= 3; ++p)
        for (int r = 1; p + r <= 4; ++r) {
          if (two_n == 4 && p + r == 4 && (p == 0 || r == 0)) continue;
          auto xs = basis_elements(two_n, p, ring);
          auto ys = basis_elements(two_n, r, ring);
          const std::size_t step = two_n == 4 ? 5 : 1;
          for (std::size_t i = 0; i < xs.size(); i += step)
            for (std::size_t j = 0; j < ys.size(); j += step) {
              auto& x = xs[i];
              auto& y = ys[j];
              auto lhs = loops_d(loops_multiply(x, y));
              auto rhs = loops_multiply(loops_d(x), y);
              rhs += loops_multiply(x, loops_d(y)).scaled(p % 2 ? -1 : 1);
              CHECK(lhs == rhs);
            }
        }
    }
  }
}

TEST_CASE("hook map from L(2) to L(4)") {
  for (int q = 0; q <= 3; ++q) {
    std::set<Pinned> images;
    for (auto& x : basis_elements(2, q, Ring::Z())) {
      auto hx = hook(x);
      REQUIRE(hx.terms().size() == 1);
      const Pinned& hp = hx.terms().begin()->first;
      images.insert(hp);
      CHECK(loops_weight(hp, 0) == loops_weight(x.terms().begin()->first, 0));
      CHECK(hook(loops_d(x)) == loops_d(hx));
    }
    CHECK(images.size() == pinned_count(2, 0, q));
  }
  for (auto& x : basis_elements(2, 1, Ring::Z()))
    for (auto& y : basis_elements(2, 2, Ring::Z()))
      CHECK(hook(loops_multiply(x, y)) == loops_multiply(hook(x), hook(y)));
  CHECK(hook(phi(2, Ring::Z())).terms().size() == 1);
}

TEST_CASE("involutions are chain maps of order two") {
  for (Axis axis : {Axis::left_right, Axis::top_bottom})
    for (int q = 1; q <= 3; ++q)
      for (auto& x : basis_elements(4, q, Ring::Z())) {
        auto ix = involution(x, axis);
        CHECK(involution(ix, axis) == x);
        CHECK(involution(loops_d(x), axis) == loops_d(ix));
      }
}
