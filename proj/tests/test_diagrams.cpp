#include <doctest.h>

#include <random>
#include <set>

#include "tlhom/diagrams.hpp"

using namespace tlh;

namespace {

Node L(int i) { return {Side::L, i}; }
Node R(int i) { return {Side::R, i}; }

// Circular position used by the oracle: left 1..m, then right n..1.
int circ(int m, int n, Node v) { return v.side == Side::L ? v.index - 1 : m + (n - v.index); }

bool chords_cross(std::pair<int, int> a, std::pair<int, int> b) {
  if (a.first > a.second) std::swap(a.first, a.second);
  if (b.first > b.second) std::swap(b.first, b.second);
  return (a.first < b.first && b.first < a.second && a.second < b.second) ||
         (b.first < a.first && a.first < b.second && b.second < a.second);
}

// All perfect matchings of k points, planar or not.
void all_matchings(std::vector<int>& partner, std::vector<std::vector<int>>& out) {
  int first = -1;
  for (int i = 0; i < static_cast<int>(partner.size()); ++i)
    if (partner[i] < 0) {
      first = i;
      break;
    }
  if (first < 0) {
    out.push_back(partner);
    return;
  }
  for (int j = first + 1; j < static_cast<int>(partner.size()); ++j) {
    if (partner[j] >= 0) continue;
    partner[first] = j;
    partner[j] = first;
    all_matchings(partner, out);
    partner[first] = partner[j] = -1;
  }
}

bool brute_planar(const std::vector<int>& p) {
  for (int a = 0; a < static_cast<int>(p.size()); ++a)
    for (int b = 0; b < static_cast<int>(p.size()); ++b)
      if (a < p[a] && b < p[b] && a != b && chords_cross({a, p[a]}, {b, p[b]})) return false;
  return true;
}

std::uint64_t recursive_catalan(int k) {
  if (k == 0) return 1;
  std::uint64_t s = 0;
  for (int j = 0; j < k; ++j) s += recursive_catalan(j) * recursive_catalan(k - 1 - j);
  return s;
}

// Independent composition: walk strands through the glued picture.
std::pair<std::set<std::set<std::pair<int, int>>>, int> oracle_compose(const Diagram& d, const Diagram& e) {
  const int l = d.left(), m = d.right(), n = e.right();
  auto mate_d = [&](Node v) { return d.mate(v); };
  auto mate_e = [&](Node v) { return e.mate(v); };
  // outer endpoints: (0,i) left of d, (1,i) right of e
  std::set<std::set<std::pair<int, int>>> arcs;
  std::set<int> seen_mid;
  auto walk = [&](int start_side, Node v) {
    // v is an outer endpoint; follow until the next outer endpoint
    bool in_d = start_side == 0;
    Node cur = v;
    while (true) {
      Node nx = in_d ? mate_d(cur) : mate_e(cur);
      if (in_d && nx.side == Side::L) return std::make_pair(0, nx.index);
      if (!in_d && nx.side == Side::R) return std::make_pair(1, nx.index);
      seen_mid.insert(nx.index);
      cur = in_d ? L(nx.index) : R(nx.index);
      in_d = !in_d;
    }
  };
  for (int i = 1; i <= l; ++i) arcs.insert(std::set<std::pair<int, int>>{std::make_pair(0, i), walk(0, L(i))});
  for (int i = 1; i <= n; ++i) arcs.insert(std::set<std::pair<int, int>>{std::make_pair(1, i), walk(1, R(i))});
  int loops = 0;
  for (int j = 1; j <= m; ++j) {
    if (seen_mid.count(j)) continue;
    ++loops;
    Node cur = R(j);  // middle node j as a right node of d
    bool in_d = true;
    while (true) {
      seen_mid.insert(cur.index);
      Node nx = in_d ? mate_d(cur) : mate_e(cur);
      seen_mid.insert(nx.index);
      cur = in_d ? L(nx.index) : R(nx.index);
      in_d = !in_d;
      if (in_d && cur.index == j) break;
    }
  }
  return {arcs, loops};
}

std::set<std::set<std::pair<int, int>>> arc_set(const Diagram& d) {
  std::set<std::set<std::pair<int, int>>> s;
  for (auto& [u, v] : d.arcs())
    s.insert(std::set<std::pair<int, int>>{std::make_pair(u.side == Side::L ? 0 : 1, u.index),
                                           std::make_pair(v.side == Side::L ? 0 : 1, v.index)});
  return s;
}

}  // namespace

TEST_CASE("enumeration counts agree with brute force and the Catalan recursion") {
  for (int m = 0; m <= 8; ++m)
    for (int n = 0; m + n <= 10; ++n) {
      auto ds = enumerate_diagrams(m, n);
      if ((m + n) % 2) {
        CHECK(ds.empty());
        continue;
      }
      std::vector<int> partner(m + n, -1);
      std::vector<std::vector<int>> all;
      all_matchings(partner, all);
      std::size_t planar = 0;
      for (auto& p : all) planar += brute_planar(p);
      CHECK(ds.size() == planar);
      CHECK(ds.size() == recursive_catalan((m + n) / 2));
      CHECK(ds.size() == catalan((m + n) / 2));
      std::set<std::string> keys;
      for (auto& d : ds) keys.insert(d.key());
      CHECK(keys.size() == ds.size());
      CHECK(std::is_sorted(ds.begin(), ds.end()));
    }
}

TEST_CASE("planarity validation agrees with a crossing test") {
  for (int k = 0; k <= 10; k += 2) {
    std::vector<int> partner(k, -1);
    std::vector<std::vector<int>> all;
    all_matchings(partner, all);
    for (auto& p : all) {
      std::vector<std::uint8_t> q(p.begin(), p.end());
      CHECK(is_planar_matching(q) == brute_planar(p));
    }
  }
}

TEST_CASE("small spaces") {
  auto e = enumerate_diagrams(0, 0);
  REQUIRE(e.size() == 1);
  CHECK(e[0].size() == 0);
  CHECK(enumerate_diagrams(4, 4).size() == 14);
  auto d64 = enumerate_diagrams(6, 4);
  CHECK(d64.size() == 42);
  auto sample = Diagram::from_arcs(6, 4, {{L(1), L(2)}, {L(4), L(5)}, {R(2), R(3)}, {L(3), R(1)}, {L(6), R(4)}});
  CHECK(std::find(d64.begin(), d64.end(), sample) != d64.end());
}

TEST_CASE("invalid diagrams are rejected") {
  CHECK_THROWS_AS(Diagram::from_arcs(2, 2, {{L(1), R(2)}, {L(2), R(1)}}), InvalidInput);
  CHECK_THROWS_AS(Diagram::from_arcs(2, 0, {{L(1), L(3)}}), InvalidInput);
  CHECK_THROWS_AS(Diagram::from_arcs(2, 2, {{L(1), R(1)}}), InvalidInput);
  CHECK_THROWS_AS(compose(identity_diagram(2), identity_diagram(4)), InvalidInput);
}

TEST_CASE("multiplication in TL_4") {
  auto d = Diagram::from_arcs(4, 4, {{L(3), L(4)}, {R(2), R(3)}, {L(1), R(1)}, {L(2), R(4)}});
  auto e = Diagram::from_arcs(4, 4, {{L(2), L(3)}, {L(1), L(4)}, {R(1), R(2)}, {R(3), R(4)}});
  auto r = compose(d, e);
  CHECK(r.loops == 1);
  CHECK(r.diagram == Diagram::from_arcs(4, 4, {{L(1), L(2)}, {L(3), L(4)}, {R(1), R(2)}, {R(3), R(4)}}));
  auto id = identity_diagram(4);
  auto ii = compose(id, id);
  CHECK(ii.loops == 0);
  CHECK(ii.diagram == id);
}

TEST_CASE("composition TL(2,6) x TL(6,4)") {
  auto d = Diagram::from_arcs(2, 6, {{L(1), R(1)}, {L(2), R(6)}, {R(2), R(3)}, {R(4), R(5)}});
  auto e = Diagram::from_arcs(6, 4, {{L(2), L(3)}, {L(1), L(4)}, {L(5), R(1)}, {L(6), R(4)}, {R(2), R(3)}});
  auto r = compose(d, e);
  CHECK(r.loops == 1);
  CHECK(r.diagram == Diagram::from_arcs(2, 4, {{L(1), R(1)}, {L(2), R(4)}, {R(2), R(3)}}));
}

TEST_CASE("composition agrees with a strand-walking oracle on all of TL_4 x TL_4 and TL(4,6) x TL(6,2)") {
  for (auto [l, m, n] : {std::tuple{4, 4, 4}, std::tuple{4, 6, 2}, std::tuple{2, 4, 0}, std::tuple{0, 6, 2}}) {
    auto A = enumerate_diagrams(l, m), B = enumerate_diagrams(m, n);
    for (auto& a : A)
      for (auto& b : B) {
        auto r = compose(a, b);
        auto [arcs, loops] = oracle_compose(a, b);
        CHECK(r.loops == loops);
        CHECK(arc_set(r.diagram) == arcs);
      }
  }
}

TEST_CASE("composition is associative with loop counts on random triples") {
  std::mt19937 rng(12345);
  for (int trial = 0; trial < 300; ++trial) {
    int k[4];
    for (auto& x : k) x = 2 * static_cast<int>(rng() % 5);
    auto A = enumerate_diagrams(k[0], k[1]), B = enumerate_diagrams(k[1], k[2]), C = enumerate_diagrams(k[2], k[3]);
    auto& a = A[rng() % A.size()];
    auto& b = B[rng() % B.size()];
    auto& c = C[rng() % C.size()];
    auto ab = compose(a, b), bc = compose(b, c);
    auto l = compose(ab.diagram, c), r = compose(a, bc.diagram);
    CHECK(l.diagram == r.diagram);
    CHECK(ab.loops + l.loops == bc.loops + r.loops);
  }
}

TEST_CASE("identities are units") {
  for (auto& d : enumerate_diagrams(4, 6)) {
    auto a = compose(identity_diagram(4), d), b = compose(d, identity_diagram(6));
    CHECK(a.diagram == d);
    CHECK(b.diagram == d);
    CHECK(a.loops + b.loops == 0);
  }
}

TEST_CASE("named diagrams") {
  CHECK(Phi_l(2) == Diagram::from_arcs(0, 2, {{R(1), R(2)}}));
  CHECK(L_max(6) == Diagram::from_arcs(6, 0, {{L(1), L(2)}, {L(3), L(4)}, {L(5), L(6)}}));
  CHECK(L_k(4, 2) == Diagram::from_arcs(4, 2, {{L(2), L(3)}, {L(1), R(1)}, {L(4), R(2)}}));
  for (int two_n = 2; two_n <= 8; two_n += 2) {
    auto r = compose(Phi_l(two_n), Phi_r_prime(two_n));
    CHECK(r.loops == 0);
    CHECK(r.diagram == R_k(2, 1));
    auto pr = compose(Phi_r_prime(two_n), L_k(2, 1));
    CHECK(pr.loops == 0);
    CHECK(pr.diagram == Phi_r(two_n));
    CHECK(compose(Phi_l(two_n), Phi_r(two_n)).loops == 1);
  }
  CHECK_THROWS_AS(L_k(4, 4), InvalidInput);
  CHECK_THROWS_AS(L_max(3), InvalidInput);
}

TEST_CASE("reflections") {
  auto id = identity_diagram(4);
  CHECK(reflect(id, Axis::left_right) == id);
  CHECK(reflect(L_k(6, 2), Axis::left_right) == R_k(6, 2));
  for (auto& d : enumerate_diagrams(4, 4)) {
    CHECK(reflect(reflect(d, Axis::top_bottom), Axis::top_bottom) == d);
    CHECK(reflect(reflect(d, Axis::left_right), Axis::left_right) == d);
  }
  for (auto& d : enumerate_diagrams(4, 4))
    for (auto& e : enumerate_diagrams(4, 4)) {
      auto a = compose(d, e);
      auto b = compose(reflect(e, Axis::left_right), reflect(d, Axis::left_right));
      CHECK(a.loops == b.loops);
      CHECK(reflect(a.diagram, Axis::left_right) == b.diagram);
    }
}

TEST_CASE("traced composition reports where arcs go") {
  auto d = Diagram::from_arcs(4, 4, {{L(3), L(4)}, {R(2), R(3)}, {L(1), R(1)}, {L(2), R(4)}});
  auto e = Diagram::from_arcs(4, 4, {{L(2), L(3)}, {L(1), L(4)}, {R(1), R(2)}, {R(3), R(4)}});
  auto t = compose_traced(d, e);
  CHECK(t.loops == 1);
  CHECK(t.diagram == compose(d, e).diagram);
  // R2R3 of d closes up with L2L3 of e
  const int pos = d.position(R(3));
  CHECK(t.d_arc_target[std::min(pos, static_cast<int>(d.partner()[pos]))] < 0);
}
