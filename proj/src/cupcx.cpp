#include "tlhom/cupcx.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "tlhom/loops.hpp"

namespace tlh {

namespace {

constexpr int kFiniteTop = 1 << 20;

std::int64_t loop_factor(const Ring& r, int loops) {
  if (r.a == 0) return loops == 0 ? 1 : 0;
  return r.a_power(loops);
}

void subsets(const std::vector<int>& items, int q, std::vector<std::vector<int>>& out) {
  std::vector<int> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (static_cast<int>(cur.size()) == q) {
      out.push_back(cur);
      return;
    }
    for (std::size_t k = start; k < items.size(); ++k) {
      cur.push_back(items[k]);
      rec(k + 1);
      cur.pop_back();
    }
  };
  rec(0);
}

std::vector<int> odd_nodes(int two_i) {
  std::vector<int> v;
  for (int k = 1; k < two_i; k += 2) v.push_back(k);
  return v;
}

bool is_right_cup(const Diagram& d, int k) {
  if (k < 1 || k + 1 > d.right()) return false;
  Node m = d.mate({Side::R, k});
  return m.side == Side::R && m.index == k + 1;
}

using Index = std::map<DashedDiagram, std::uint32_t>;

Index index_of(const std::vector<DashedDiagram>& v) {
  Index ix;
  for (std::uint32_t k = 0; k < v.size(); ++k) ix.emplace(v[k], k);
  return ix;
}

/** Unweighted complex on dashed bases; boundary(q, x) lands in degree q-1. */
Complex dashed_complex(const std::string& id, const Ring& ring, int bottom,
                       const std::vector<std::vector<DashedDiagram>>& bases,
                       const std::function<DashedElement(int, const DashedDiagram&)>& boundary) {
  Complex c;
  c.ring = ring;
  c.id = id;
  c.bottom = bottom;
  c.top = bottom + static_cast<int>(bases.size());
  const std::uint32_t mod = ring.modulus();
  std::vector<Index> ix;
  for (auto& b : bases) ix.push_back(index_of(b));
  for (std::size_t s = 0; s < bases.size(); ++s) {
    const int q = bottom + static_cast<int>(s);
    BlockKey k{q, kAllWeights};
    auto& lab = c.basis[k];
    for (std::uint64_t j = 0; j < bases[s].size(); ++j) lab.push_back(j);
    if (s == 0) continue;
    std::vector<SparseMatrix::Triplet> trip;
    for (std::uint32_t j = 0; j < bases[s].size(); ++j)
      for (auto& [y, v] : boundary(q, bases[s][j])) {
        auto it = ix[s - 1].find(y);
        if (it == ix[s - 1].end())
          throw InternalInconsistency(id + ": boundary leaves the basis at " + y.str());
        trip.push_back({it->second, j, v});
      }
    c.d[k] = SparseMatrix::from_triplets(static_cast<std::uint32_t>(bases[s - 1].size()),
                                         static_cast<std::uint32_t>(bases[s].size()), std::move(trip), mod);
  }
  auto shared = std::make_shared<std::vector<std::vector<DashedDiagram>>>(bases);
  c.describe = [shared, bottom](int q, std::uint64_t lab) { return (*shared)[q - bottom][lab].str(); };
  return c;
}

}  // namespace

std::string DashedDiagram::str() const {
  std::string s = base.str() + " dashed{";
  for (std::size_t k = 0; k < dashed.size(); ++k) s += (k ? "," : "") + std::to_string(dashed[k]);
  return s + "}";
}

void add_term(DashedElement& e, const DashedDiagram& d, std::int64_t c) {
  if (c == 0) return;
  auto it = e.find(d);
  if (it == e.end()) {
    e.emplace(d, c);
    return;
  }
  it->second += c;
  if (it->second == 0) e.erase(it);
}

std::vector<Diagram> cell_basis(int two_n, int two_i) {
  std::vector<Diagram> out;
  for (auto& d : diagram_space(two_n, two_i)->items())
    if (!d.has_right_cup()) out.push_back(d);
  return out;
}

std::vector<int> innermost_right_cups(const Diagram& d) {
  std::vector<int> v;
  for (int k = 1; k < d.right(); ++k)
    if (is_right_cup(d, k)) v.push_back(k);
  return v;
}

std::vector<int> outermost_left_cups(const Diagram& d) {
  std::vector<std::pair<int, int>> cups;
  for (int j = 1; j <= d.left(); ++j) {
    Node m = d.mate({Side::L, j});
    if (m.side == Side::L && m.index > j) cups.push_back({j, m.index});
  }
  std::vector<int> v;
  for (auto [a, b] : cups) {
    bool nested = false;
    for (auto [c, e] : cups)
      if (c < a && e > b) nested = true;
    if (!nested) v.push_back(a);
  }
  return v;
}

std::vector<DashedDiagram> inn_basis(int two_n, int two_i, int q) {
  std::vector<DashedDiagram> out;
  for (auto& d : diagram_space(two_n, two_i)->items()) {
    std::vector<std::vector<int>> fs;
    subsets(innermost_right_cups(d), q, fs);
    for (auto& f : fs) out.push_back({d, f});
  }
  return out;
}

std::vector<DashedDiagram> out_basis(int two_n, int q) {
  std::vector<DashedDiagram> out;
  for (auto& d : diagram_space(two_n, 0)->items()) {
    std::vector<std::vector<int>> fs;
    subsets(outermost_left_cups(d), q, fs);
    for (auto& f : fs) out.push_back({d, f});
  }
  return out;
}

DashedElement undash_boundary(const DashedDiagram& d) {
  DashedElement e;
  for (std::size_t j = 0; j < d.dashed.size(); ++j) {
    DashedDiagram f = d;
    f.dashed.erase(f.dashed.begin() + j);
    add_term(e, f, j % 2 ? -1 : 1);
  }
  return e;
}

DashedElement undash_boundary(const DashedElement& x) {
  DashedElement e;
  for (auto& [d, c] : x)
    for (auto& [f, v] : undash_boundary(d)) add_term(e, f, c * v);
  return e;
}

Complex build_inn_complex(int two_n, int two_i, bool augmented, const Ring& ring) {
  if (two_n < 0 || two_i < 0 || two_n % 2 || two_i % 2) throw InvalidInput("Inn complex needs even sizes");
  std::vector<std::vector<DashedDiagram>> bases;
  if (augmented) {
    bases.emplace_back();
    for (auto& d : cell_basis(two_n, two_i)) bases.back().push_back({d, {}});
  }
  for (int q = 0; q <= two_i / 2; ++q) bases.push_back(inn_basis(two_n, two_i, q));
  std::ostringstream id;
  id << "Inn" << (augmented ? "aug" : "") << "(" << two_n << "," << two_i << ")";
  return dashed_complex(id.str(), ring, augmented ? -1 : 0, bases, [](int q, const DashedDiagram& x) {
    if (q > 0) return undash_boundary(x);
    DashedElement e;
    if (!x.base.has_right_cup()) add_term(e, x, 1);
    return e;
  });
}

Complex build_out_complex(int two_n, const Ring& ring) {
  if (two_n < 0 || two_n % 2) throw InvalidInput("Out complex needs an even size");
  if (!ring.a_is_zero()) throw InvalidInput("the outermost cup complex needs parameter a = 0");
  std::vector<std::vector<DashedDiagram>> bases;
  for (int q = 0; q <= two_n / 2; ++q) bases.push_back(out_basis(two_n, q));
  return dashed_complex("Out(" + std::to_string(two_n) + ")", ring, 0, bases,
                        [](int, const DashedDiagram& x) { return undash_boundary(x); });
}

Diagram forget_dashed_cups(const DashedDiagram& d) {
  std::vector<bool> gone(d.base.right() + 1, false);
  for (int k : d.dashed) {
    if (!is_right_cup(d.base, k)) throw InvalidInput("dashed arc is not a right cup: " + d.str());
    gone[k] = gone[k + 1] = true;
  }
  std::vector<int> renum(d.base.right() + 1, 0);
  for (int k = 1, r = 0; k <= d.base.right(); ++k)
    if (!gone[k]) renum[k] = ++r;
  std::vector<Arc> arcs;
  for (auto [u, v] : d.base.arcs()) {
    if (u.side == Side::R && gone[u.index]) continue;
    if (u.side == Side::R) u.index = renum[u.index];
    if (v.side == Side::R) v.index = renum[v.index];
    arcs.push_back({u, v});
  }
  return Diagram::from_arcs(d.base.left(), d.base.right() - 2 * static_cast<int>(d.dashed.size()), arcs);
}

namespace {

/** Result arcs carrying the given e-arcs, as dashed outermost left cups; empty if any merge or nest. */
std::optional<DashedDiagram> dash_targets(const TracedComposition& tc, const std::vector<int>& e_positions) {
  if (tc.loops) return std::nullopt;
  std::vector<int> f;
  for (int p : e_positions) {
    int t = tc.e_arc_target[p];
    if (t < 0) return std::nullopt;
    f.push_back(t + 1);
  }
  std::sort(f.begin(), f.end());
  if (std::adjacent_find(f.begin(), f.end()) != f.end()) return std::nullopt;
  auto outer = outermost_left_cups(tc.diagram);
  for (int k : f)
    if (!std::binary_search(outer.begin(), outer.end(), k)) return std::nullopt;
  return DashedDiagram{tc.diagram, f};
}

}  // namespace

std::optional<DashedDiagram> close_all_cups(const Diagram& d) {
  const int two_q = d.right();
  std::vector<int> pos;
  for (int t = 0; t < two_q / 2; ++t) pos.push_back(2 * t);
  return dash_targets(compose_traced(d, L_max(two_q)), pos);
}

Diagram cut_open(const DashedDiagram& d) {
  if (d.base.right() != 0) throw InvalidInput("cut_open expects a diagram in TL(2n,0)");
  std::vector<Arc> arcs;
  for (auto [u, v] : d.base.arcs()) {
    auto it = std::find(d.dashed.begin(), d.dashed.end(), u.index);
    if (u.side == Side::L && v.side == Side::L && it != d.dashed.end()) {
      int j = static_cast<int>(it - d.dashed.begin()) + 1;
      int a = std::min(u.index, v.index), b = std::max(u.index, v.index);
      arcs.push_back({{Side::L, a}, {Side::R, 2 * j - 1}});
      arcs.push_back({{Side::L, b}, {Side::R, 2 * j}});
    } else {
      arcs.push_back({u, v});
    }
  }
  return Diagram::from_arcs(d.base.left(), 2 * static_cast<int>(d.dashed.size()), arcs);
}

std::optional<DashedDiagram> out_action(const Diagram& t, const DashedDiagram& d) {
  std::vector<int> pos;
  for (int k : d.dashed) pos.push_back(k - 1);
  return dash_targets(compose_traced(t, d.base), pos);
}

bool is_submaximal(const DashedDiagram& d) {
  for (int k : d.dashed)
    if (k % 2 == 0 || !is_right_cup(d.base, k)) return false;
  return true;
}

std::vector<DashedDiagram> submaximal_basis(int two_n, int two_i, int q) {
  std::vector<DashedDiagram> out;
  if (q == 0) {
    for (auto& d : diagram_space(two_n, two_i)->items())
      for (int k = 1; k < two_i; k += 2)
        if (is_right_cup(d, k)) {
          out.push_back({d, {}});
          break;
        }
    return out;
  }
  for (auto& x : inn_basis(two_n, two_i, q))
    if (is_submaximal(x)) out.push_back(x);
  return out;
}

DashedElement lifted_face(int k, const DashedDiagram& d) {
  if (!is_submaximal(d)) throw InvalidInput("lifted face needs a submaximal dashed set: " + d.str());
  const int two_i = d.base.right();
  if (k < 0 || 2 * k + 1 >= two_i) throw InvalidInput("lifted face index out of range");
  const int c = 2 * k + 1;
  DashedElement e;
  if (std::find(d.dashed.begin(), d.dashed.end(), c) != d.dashed.end()) return e;
  auto r = compose(d.base, L_k(two_i, c));
  if (r.loops) return e;
  DashedDiagram out{r.diagram, {}};
  for (int f : d.dashed) {
    int g = f < c ? f : f - 2;
    if (!is_right_cup(r.diagram, g))
      throw InternalInconsistency("lifted face lost a dashed cup: " + d.str() + " -> " + r.diagram.str());
    out.dashed.push_back(g);
  }
  add_term(e, out, 1);
  return e;
}

DashedElement lifted_face(int k, const DashedElement& x) {
  DashedElement e;
  for (auto& [d, c] : x)
    for (auto& [f, v] : lifted_face(k, d)) add_term(e, f, c * v);
  return e;
}

DashedElement lifted_boundary(const DashedElement& x, int two_i) {
  DashedElement e;
  for (int k = 0; k < two_i / 2; ++k)
    for (auto& [f, v] : lifted_face(k, x)) add_term(e, f, k % 2 ? -v : v);
  return e;
}

std::vector<std::string> lifted_face_chain_check(int two_n, int two_i) {
  std::vector<std::string> bad;
  for (int q = 1; q <= two_i / 2; ++q)
    for (auto& x : submaximal_basis(two_n, two_i, q))
      for (int k = 0; k < two_i / 2; ++k) {
        auto lhs = undash_boundary(lifted_face(k, x));
        auto rhs = lifted_face(k, undash_boundary(x));
        if (lhs != rhs) bad.push_back("k=" + std::to_string(k) + " at " + x.str());
      }
  return bad;
}

namespace {

struct ModuleData {
  BarModule module;
  std::vector<DashedDiagram> x, y;
};

using Action = std::function<std::optional<std::pair<DashedDiagram, int>>(const Diagram&, const DashedDiagram&)>;

ModuleData make_module(const std::string& name, int two_n, int two_i, const Ring& ring, bool weighted,
                       std::vector<DashedDiagram> xs, std::vector<DashedDiagram> ys, const Action& act,
                       const Action& phi) {
  ModuleData md;
  md.x = std::move(xs);
  md.y = std::move(ys);
  BarModule& m = md.module;
  m.name = name;
  m.x_size = md.x.size();
  m.y_size = md.y.size();
  auto T = diagram_space(two_n, two_n);
  auto A = diagram_space(0, two_n);
  Index xi = index_of(md.x), yi = index_of(md.y);
  m.act.resize(T->size() * m.x_size);
  for (std::size_t t = 0; t < T->size(); ++t)
    for (std::size_t x = 0; x < m.x_size; ++x) {
      auto r = act((*T)[t], md.x[x]);
      if (!r) continue;
      auto it = xi.find(r->first);
      if (it == xi.end()) throw InternalInconsistency(name + ": action leaves the basis at " + r->first.str());
      m.act[t * m.x_size + x] = {loop_factor(ring, r->second), it->second};
    }
  m.phi.resize(A->size() * m.x_size);
  for (std::size_t a = 0; a < A->size(); ++a)
    for (std::size_t x = 0; x < m.x_size; ++x) {
      auto r = phi((*A)[a], md.x[x]);
      if (!r) continue;
      auto it = yi.find(r->first);
      if (it == yi.end()) throw InternalInconsistency(name + ": phi leaves the basis at " + r->first.str());
      m.phi[a * m.x_size + x] = {loop_factor(ring, r->second), it->second};
    }
  if (weighted) {
    const Diagram lmax = L_max(two_i);
    m.y_weight.resize(m.y_size);
    for (std::size_t y = 0; y < m.y_size; ++y) m.y_weight[y] = compose(md.y[y].base, lmax).loops;
    m.close_weight.resize(A->size() * m.x_size);
    for (std::size_t a = 0; a < A->size(); ++a)
      for (std::size_t x = 0; x < m.x_size; ++x) {
        auto r = compose((*A)[a], md.x[x].base);
        m.close_weight[a * m.x_size + x] = r.loops + compose(r.diagram, lmax).loops;
      }
  }
  auto xs_shared = std::make_shared<std::vector<DashedDiagram>>(md.x);
  auto ys_shared = std::make_shared<std::vector<DashedDiagram>>(md.y);
  m.x_name = [xs_shared](std::size_t k) { return (*xs_shared)[k].str(); };
  m.y_name = [ys_shared](std::size_t k) { return (*ys_shared)[k].str(); };
  return md;
}

std::vector<DashedDiagram> plain(const std::vector<Diagram>& v) {
  std::vector<DashedDiagram> out;
  for (auto& d : v) out.push_back({d, {}});
  return out;
}

}  // namespace

DerivedComplex build_derived(const DerivedSpec& spec) {
  const int two_n = spec.two_n;
  if (two_n < 2 || two_n % 2) throw InvalidInput("derived complexes need even 2n >= 2");
  if (spec.q_max < 0) throw InvalidInput("max degree must be non-negative");
  ModuleData md;
  std::ostringstream id;
  const Ring& ring = spec.ring;
  auto keep_dashes = [](const Diagram& t, const DashedDiagram& x) -> std::optional<std::pair<DashedDiagram, int>> {
    auto r = compose(t, x.base);
    return std::make_pair(DashedDiagram{r.diagram, x.dashed}, r.loops);
  };
  switch (spec.kind) {
    case DerivedKind::inn: {
      const int two_i = spec.two_i;
      if (two_i < 0 || two_i % 2 || spec.p < 0 || spec.p > two_i / 2) throw InvalidInput("DInn: bad (2i, p)");
      md = make_module("Inn_" + std::to_string(spec.p), two_n, two_i, ring, spec.weighted,
                       inn_basis(two_n, two_i, spec.p), inn_basis(0, two_i, spec.p), keep_dashes, keep_dashes);
      id << "DInn_" << spec.p << "(" << two_n << "," << two_i << ")";
      break;
    }
    case DerivedKind::cell: {
      const int two_i = spec.two_i;
      if (two_i < 0 || two_i % 2) throw InvalidInput("DS: bad 2i");
      auto act = [](const Diagram& t, const DashedDiagram& x) -> std::optional<std::pair<DashedDiagram, int>> {
        auto r = compose(t, x.base);
        if (r.diagram.has_right_cup()) return std::nullopt;
        return std::make_pair(DashedDiagram{r.diagram, {}}, r.loops);
      };
      md = make_module("S", two_n, two_i, ring, spec.weighted, plain(cell_basis(two_n, two_i)),
                       plain(cell_basis(0, two_i)), act, act);
      id << "DS(" << two_n << "," << two_i << ")";
      break;
    }
    case DerivedKind::out: {
      if (!ring.a_is_zero()) throw InvalidInput("the derived outermost cup complex needs parameter a = 0");
      if (spec.p < 0 || spec.p > two_n / 2) throw InvalidInput("DOut: bad column");
      auto act = [](const Diagram& t, const DashedDiagram& x) -> std::optional<std::pair<DashedDiagram, int>> {
        auto r = out_action(t, x);
        if (!r) return std::nullopt;
        return std::make_pair(*r, 0);
      };
      auto phi = [](const Diagram& a0, const DashedDiagram& x) -> std::optional<std::pair<DashedDiagram, int>> {
        if (!x.dashed.empty()) return std::nullopt;
        auto r = compose(a0, x.base);
        return std::make_pair(DashedDiagram{r.diagram, {}}, r.loops);
      };
      std::vector<DashedDiagram> ys;
      if (spec.p == 0) ys.push_back({Diagram::from_partner(0, 0, {}), {}});
      md = make_module("Out_" + std::to_string(spec.p), two_n, 0, ring, spec.weighted, out_basis(two_n, spec.p), ys,
                       act, phi);
      id << "DOut_" << spec.p << "(" << two_n << ")";
      break;
    }
  }
  id << ";" << ring.name() << "," << ring.a;
  DerivedComplex dc;
  dc.bar.two_n = two_n;
  dc.bar.ring = ring;
  dc.bar.left = LeftEnd::cup;
  dc.bar.normalized = false;
  dc.bar.weighted = spec.weighted;
  dc.bar.q_max = spec.q_max;
  dc.bar.module = md.module;
  dc.bar.id = id.str();
  dc.complex = build_bar_complex(dc.bar);
  dc.x_basis = std::move(md.x);
  dc.y_basis = std::move(md.y);
  return dc;
}

ChainMap derived_map(const DerivedComplex& src, const DerivedComplex& dst,
                     const std::function<DashedElement(const DashedDiagram&)>& on_x,
                     const std::function<DashedElement(const DashedDiagram&)>& on_y) {
  const int two_n = src.bar.two_n;
  BarLayout ls(two_n, LeftEnd::cup, false, src.x_basis.size());
  BarLayout ld(two_n, LeftEnd::cup, false, dst.x_basis.size());
  Index xi = index_of(dst.x_basis), yi = index_of(dst.y_basis);
  const std::uint32_t mod = src.complex.ring.modulus();
  ChainMap f;
  for (auto& [k, b] : src.complex.basis) {
    auto db = dst.complex.basis.find(k);
    std::unordered_map<std::uint64_t, std::uint32_t> pos;
    if (db != dst.complex.basis.end())
      for (std::uint32_t j = 0; j < db->second.size(); ++j) pos.emplace(db->second[j], j);
    std::vector<SparseMatrix::Triplet> trip;
    for (std::uint32_t j = 0; j < b.size(); ++j) {
      auto put = [&](std::uint64_t lab, std::int64_t v) {
        auto it = pos.find(lab);
        if (it == pos.end())
          throw InternalInconsistency("derived map leaves block " + block_name(k) + " of " + dst.complex.id);
        trip.push_back({it->second, j, v});
      };
      if (k.q == 0) {
        for (auto& [y, v] : on_y(src.y_basis[b[j]])) {
          auto it = yi.find(y);
          if (it == yi.end()) throw InternalInconsistency("derived map: unknown target " + y.str());
          put(it->second, v);
        }
        continue;
      }
      BarTuple t = ls.decode(k.q, b[j]);
      for (auto& [x, v] : on_x(src.x_basis[t.x])) {
        auto it = xi.find(x);
        if (it == xi.end()) throw InternalInconsistency("derived map: unknown target " + x.str());
        BarTuple nt = t;
        nt.x = it->second;
        std::uint64_t lab;
        ld.encode(k.q, nt, lab);
        put(lab, v);
      }
    }
    f[k] = SparseMatrix::from_triplets(static_cast<std::uint32_t>(dst.complex.dim(k)),
                                       static_cast<std::uint32_t>(b.size()), std::move(trip), mod);
  }
  return f;
}

namespace {

DashedElement none(const DashedDiagram&) { return {}; }

DashedElement quotient(const DashedDiagram& x) {
  DashedElement e;
  if (!x.base.has_right_cup()) add_term(e, {x.base, {}}, 1);
  return e;
}

}  // namespace

Complex build_dout_total(int two_n, const Ring& ring, int q_max, bool weighted, bool augmented) {
  std::vector<Complex> cols;
  std::vector<ChainMap> maps;
  std::vector<DerivedComplex> dc;
  const int shift = augmented ? 1 : 0;
  for (int p = 0; p <= two_n / 2; ++p) {
    DerivedSpec s;
    s.kind = DerivedKind::out;
    s.two_n = two_n;
    s.p = p;
    s.ring = ring;
    s.weighted = weighted;
    s.q_max = std::max(0, q_max - p - shift);
    dc.push_back(build_derived(s));
  }
  if (augmented) {
    Complex r;
    r.ring = ring;
    r.id = "R";
    r.weighted = weighted;
    r.top = kFiniteTop;
    r.basis[{0, weighted ? 0 : kAllWeights}] = {0};
    r.describe = [](int, std::uint64_t) { return std::string("1"); };
    ChainMap eps;
    for (auto& [k, b] : dc[0].complex.basis) {
      std::vector<SparseMatrix::Triplet> trip;
      if (k.q == 0)
        for (std::uint32_t j = 0; j < b.size(); ++j) trip.push_back({0, j, 1});
      eps[k] = SparseMatrix::from_triplets(static_cast<std::uint32_t>(r.dim(k)), static_cast<std::uint32_t>(b.size()),
                                           std::move(trip), ring.modulus());
    }
    cols.push_back(std::move(r));
    maps.push_back(std::move(eps));
  }
  for (std::size_t p = 0; p < dc.size(); ++p) {
    if (p > 0)
      maps.push_back(derived_map(dc[p], dc[p - 1], [](const DashedDiagram& x) { return undash_boundary(x); }, none));
    cols.push_back(dc[p].complex);
  }
  Complex t = totalize(cols, maps);
  t.id = std::string(augmented ? "aug" : "") + "DOut(" + std::to_string(two_n) + ";" + ring.name() + ")";
  return t;
}

Complex build_dinn_total(int two_n, int two_i, const Ring& ring, int q_max, bool weighted) {
  std::vector<DerivedComplex> dc;
  DerivedSpec s;
  s.two_n = two_n;
  s.two_i = two_i;
  s.ring = ring;
  s.weighted = weighted;
  s.kind = DerivedKind::cell;
  s.q_max = q_max;
  dc.push_back(build_derived(s));
  s.kind = DerivedKind::inn;
  for (int p = 0; p <= two_i / 2; ++p) {
    s.p = p;
    s.q_max = std::max(0, q_max - p - 1);
    dc.push_back(build_derived(s));
  }
  std::vector<Complex> cols;
  std::vector<ChainMap> maps;
  auto boundary = [](const DashedDiagram& x) { return undash_boundary(x); };
  for (std::size_t c = 0; c < dc.size(); ++c) {
    if (c == 1) maps.push_back(derived_map(dc[1], dc[0], quotient, quotient));
    if (c > 1) maps.push_back(derived_map(dc[c], dc[c - 1], boundary, boundary));
    cols.push_back(dc[c].complex);
  }
  Complex t = totalize(cols, maps);
  t.id = "DInnaug(" + std::to_string(two_n) + "," + std::to_string(two_i) + ";" + ring.name() + ")";
  return t;
}

IsoReport dinn_top_isomorphism(int two_n, int two_i, int q_max) {
  IsoReport rep;
  const int i = two_i / 2;
  LoopsSpec ls;
  ls.two_n = two_n;
  ls.ring = Ring::Z();
  ls.q_max = q_max;
  ls.weighted = true;
  Complex L = build_loops_complex(ls);
  DerivedSpec s;
  s.kind = DerivedKind::inn;
  s.two_n = two_n;
  s.two_i = two_i;
  s.p = i;
  s.ring = Ring::Z();
  s.weighted = true;
  s.q_max = q_max;
  DerivedComplex D = build_derived(s);
  const Diagram rmax = R_max(two_i);
  const std::vector<int> all = odd_nodes(two_i);
  Index xi = index_of(D.x_basis), yi = index_of(D.y_basis);
  auto TX = diagram_space(two_n, 0);
  if (D.x_basis.size() != TX->size() || D.y_basis.size() != 1) {
    rep.ok = false;
    rep.detail = "Inn_i bases do not match TL(2n,0)";
    return rep;
  }
  std::vector<std::uint32_t> x_to(TX->size());
  for (std::size_t x = 0; x < TX->size(); ++x) {
    auto it = xi.find({compose((*TX)[x], rmax).diagram, all});
    if (it == xi.end()) {
      rep.ok = false;
      rep.detail = "no dashed image for " + (*TX)[x].str();
      return rep;
    }
    x_to[x] = it->second;
  }
  BarLayout la(two_n, LeftEnd::cup, false, TX->size());
  BarLayout lb(two_n, LeftEnd::cup, false, D.x_basis.size());
  std::map<BlockKey, std::vector<std::uint32_t>> perm;
  for (auto& [k, b] : L.basis) {
    BlockKey kd{k.q, k.w + i};
    auto db = D.complex.basis.find(kd);
    if (db == D.complex.basis.end() || db->second.size() != b.size()) {
      rep.ok = false;
      rep.detail = "block size mismatch at " + block_name(k);
      return rep;
    }
    std::unordered_map<std::uint64_t, std::uint32_t> pos;
    for (std::uint32_t j = 0; j < db->second.size(); ++j) pos.emplace(db->second[j], j);
    auto& pm = perm[k];
    for (auto lab : b) {
      std::uint64_t target;
      if (k.q == 0) {
        target = yi.begin()->second;
      } else {
        BarTuple t = la.decode(k.q, lab);
        t.x = x_to[t.x];
        lb.encode(k.q, t, target);
      }
      auto it = pos.find(target);
      if (it == pos.end()) {
        rep.ok = false;
        rep.detail = "weight not shifted by i at " + block_name(k);
        return rep;
      }
      pm.push_back(it->second);
    }
  }
  for (auto& [k, m] : L.d) {
    const SparseMatrix* md = D.complex.differential({k.q, k.w + i});
    auto below = perm.find({k.q - 1, k.w});
    if (!md || md->nnz() != m.nnz() || below == perm.end()) {
      if (m.nnz() == 0 && (!md || md->nnz() == 0)) continue;
      rep.ok = false;
      rep.detail = "differential mismatch at " + block_name(k);
      return rep;
    }
    for (auto& t : m.triplets())
      if (md->at(below->second[t.row], perm[k][t.col]) != t.value) {
        rep.ok = false;
        rep.detail = "differential entry mismatch at " + block_name(k);
        return rep;
      }
  }
  rep.detail = "bijective through degree " + std::to_string(q_max) + ", weight shift " + std::to_string(i);
  return rep;
}

WitnessReport lemma81_witness(int n, int i) {
  if (i < 1 || i > n) throw InvalidInput("witness needs 1 <= i <= n");
  const int two_n = 2 * n, two_i = 2 * i;
  WitnessReport rep;
  const std::vector<int> all = odd_nodes(two_i);
  DashedDiagram top{R_max(two_i), all};
  DashedElement delta = undash_boundary(top);

  DashedElement z;
  const Diagram phr = Phi_r_prime(two_n);
  for (int j = 1; j <= i; ++j) {
    auto r = compose(phr, C_open(two_i, j));
    if (r.loops) throw InternalInconsistency("Phi_r' * C formed a loop");
    std::vector<int> f;
    for (int k : all)
      if (k != 2 * j - 1) f.push_back(k);
    add_term(z, {r.diagram, f}, j % 2 ? 1 : -1);
  }

  const Diagram phl = Phi_l(two_n);
  DashedElement dz;
  for (auto& [x, c] : z) {
    auto r = compose(phl, x.base);
    if (r.loops == 0) add_term(dz, {r.diagram, x.dashed}, c);
  }
  auto show = [&](const DashedElement& e) {
    if (e.empty()) return std::string("0");
    std::string s;
    for (auto& [x, c] : e) s += (s.empty() ? "" : " + ") + std::to_string(c) + "*" + x.str();
    return s;
  };
  if (dz != delta) rep.lift_check = "d(z) = " + show(dz) + " but delta(R) = " + show(delta);

  DashedElement image = lifted_boundary(z, two_i);
  DashedDiagram expected{compose(Phi_r(two_n), R_max(two_i - 2)).diagram, odd_nodes(two_i - 2)};
  auto it = image.find(expected);
  rep.coefficient = it == image.end() ? 0 : it->second;
  rep.lhs = "Phi_l (x) [" + show(image) + "]";
  rep.rhs = std::to_string(i) + " * Phi_l (x) " + expected.str();
  rep.ok = rep.lift_check.empty() && image.size() == 1 && rep.coefficient == i;
  return rep;
}

}  // namespace tlh
