#include "tlhom/barcx.hpp"

#include <map>

namespace tlh {

BarLayout::BarLayout(int two_n, LeftEnd left, bool normalized, std::size_t x_size)
    : left_(left), normalized_(normalized), x_(x_size) {
  auto T = diagram_space(two_n, two_n);
  a0_ = left == LeftEnd::cup ? diagram_space(0, two_n)->size() : 1;
  identity_ = T->identity_index();
  t_ = T->size() - (normalized ? 1 : 0);
}

std::uint64_t BarLayout::count(int q) const {
  if (q < 0 || (left_ == LeftEnd::cup && q == 0)) return 0;
  std::uint64_t n = (left_ == LeftEnd::cup ? a0_ : 1) * x_;
  for (int k = 0; k < middle_count(q); ++k) n *= t_;
  return n;
}

BarTuple BarLayout::decode(int q, std::uint64_t idx) const {
  BarTuple t;
  t.x = static_cast<std::uint32_t>(idx % x_);
  idx /= x_;
  t.mid.resize(middle_count(q));
  for (int k = middle_count(q) - 1; k >= 0; --k) {
    std::uint32_t dgt = static_cast<std::uint32_t>(idx % t_);
    idx /= t_;
    if (normalized_ && static_cast<int>(dgt) >= identity_) ++dgt;
    t.mid[k] = dgt;
  }
  t.a0 = static_cast<std::uint32_t>(idx);
  return t;
}

bool BarLayout::encode(int q, const BarTuple& t, std::uint64_t& idx) const {
  std::uint64_t v = left_ == LeftEnd::cup ? t.a0 : 0;
  for (int k = 0; k < middle_count(q); ++k) {
    std::uint32_t dgt = t.mid[k];
    if (normalized_) {
      if (static_cast<int>(dgt) == identity_) return false;
      if (static_cast<int>(dgt) > identity_) --dgt;
    }
    v = v * t_ + dgt;
  }
  idx = v * x_ + t.x;
  return true;
}

namespace {

struct Face {
  std::int64_t coef;
  std::uint64_t target;
};

}  // namespace

Complex build_bar_complex(const BarSpec& spec) {
  const int two_n = spec.two_n;
  const BarModule& X = spec.module;
  const Ring& ring = spec.ring;
  const bool cup = spec.left == LeftEnd::cup;
  if (spec.weighted && !ring.graded()) throw InvalidInput("weight grading undefined: parameter a is nonzero");
  if (spec.weighted && !cup) throw InvalidInput("weight grading is only defined for cup-ended complexes");
  BarLayout layout(two_n, spec.left, spec.normalized, X.x_size);
  auto TT = composition_table(two_n, two_n, two_n);
  std::shared_ptr<const CompositionTable> A0T;
  if (cup) A0T = composition_table(0, two_n, two_n);
  auto Tspace = diagram_space(two_n, two_n);
  auto A0space = diagram_space(0, two_n);
  const int id_t = Tspace->identity_index();
  const std::uint32_t mod = ring.modulus();

  auto apower = [&](int k) -> std::int64_t {
    if (ring.a == 0) return k == 0 ? 1 : 0;
    return ring.a_power(k);
  };

  Complex c;
  c.ring = ring;
  c.id = spec.id;
  c.weighted = spec.weighted;
  c.bottom = 0;
  c.top = spec.q_max;

  auto count = [&](int q) -> std::uint64_t { return (cup && q == 0) ? X.y_size : layout.count(q); };

  auto weight_of = [&](int q, std::uint64_t idx) -> int {
    if (!spec.weighted) return kAllWeights;
    if (q == 0) return X.y_weight.at(idx);
    BarTuple t = layout.decode(q, idx);
    int w = 0;
    std::uint32_t cur = t.a0;
    for (auto m : t.mid) {
      w += A0T->loops(cur, m);
      cur = A0T->result(cur, m);
    }
    return w + X.close_weight.at(cur * X.x_size + t.x);
  };

  auto faces = [&](int q, std::uint64_t idx, std::vector<Face>& out) {
    out.clear();
    BarTuple t = layout.decode(q, idx);
    const int nm = static_cast<int>(t.mid.size());
    auto push = [&](std::int64_t sign, std::int64_t coef, const BarTuple& nt, int nq) {
      if (coef == 0) return;
      std::uint64_t target;
      if (nq == 0 && cup) {
        target = nt.x;
      } else if (!layout.encode(nq, nt, target)) {
        return;
      }
      __int128 v = static_cast<__int128>(sign) * coef;
      if (mod) {
        v %= mod;
        if (v < 0) v += mod;
        if (v == 0) return;
      }
      out.push_back({static_cast<std::int64_t>(v), target});
    };
    if (cup) {
      if (q == 1) {
        Term ph = X.phi[t.a0 * X.x_size + t.x];
        BarTuple nt;
        nt.x = ph.idx;
        push(1, ph.coef, nt, 0);
        return;
      }
      // face 0: a0 * mid[0]
      {
        BarTuple nt = t;
        nt.a0 = A0T->result(t.a0, t.mid[0]);
        nt.mid.erase(nt.mid.begin());
        push(1, apower(A0T->loops(t.a0, t.mid[0])), nt, q - 1);
      }
    } else {
      BarTuple nt = t;
      nt.mid.erase(nt.mid.begin());
      push(1, static_cast<int>(t.mid[0]) == id_t ? 1 : 0, nt, q - 1);
    }
    for (int j = 1; j < nm; ++j) {
      BarTuple nt = t;
      nt.mid[j - 1] = TT->result(t.mid[j - 1], t.mid[j]);
      nt.mid.erase(nt.mid.begin() + j);
      push(j % 2 ? -1 : 1, apower(TT->loops(t.mid[j - 1], t.mid[j])), nt, q - 1);
    }
    {
      Term a = X.act[t.mid[nm - 1] * X.x_size + t.x];
      BarTuple nt = t;
      nt.mid.pop_back();
      nt.x = a.idx;
      int face = cup ? q - 1 : q;
      push(face % 2 ? -1 : 1, a.coef, nt, q - 1);
    }
  };

  std::vector<std::uint32_t> prev_pos;
  std::vector<int> prev_w;
  std::vector<Face> fs;
  for (int q = 0; q <= spec.q_max; ++q) {
    const std::uint64_t N = count(q);
    std::vector<std::uint32_t> pos(N);
    std::vector<int> wt(N);
    std::map<int, std::vector<std::uint64_t>> blocks;
    for (std::uint64_t i = 0; i < N; ++i) {
      int w = weight_of(q, i);
      auto& b = blocks[w];
      pos[i] = static_cast<std::uint32_t>(b.size());
      wt[i] = w;
      b.push_back(i);
    }
    for (auto& [w, b] : blocks) {
      BlockKey k{q, w};
      if (q > 0) {
        std::vector<SparseMatrix::Triplet> trip;
        for (std::uint32_t j = 0; j < b.size(); ++j) {
          faces(q, b[j], fs);
          for (auto& f : fs) {
            if (prev_w[f.target] != w)
              throw InternalInconsistency("face map changes weight at " + block_name(k));
            trip.push_back({prev_pos[f.target], j, f.coef});
          }
        }
        std::uint32_t rows = 0;
        for (auto& [pk, pb] : c.basis)
          if (pk.q == q - 1 && pk.w == w) rows = static_cast<std::uint32_t>(pb.size());
        c.d[k] = SparseMatrix::from_triplets(rows, static_cast<std::uint32_t>(b.size()), std::move(trip), mod);
      }
      c.basis[k] = std::move(b);
    }
    prev_pos = std::move(pos);
    prev_w = std::move(wt);
  }

  auto module_name = X.x_name;
  auto y_name = X.y_name;
  c.describe = [layout, cup, Tspace, A0space, module_name, y_name](int q, std::uint64_t idx) {
    if (cup && q == 0) return y_name ? y_name(idx) : std::to_string(idx);
    BarTuple t = layout.decode(q, idx);
    std::string s = "(";
    if (cup) s += (*A0space)[t.a0].str() + " | ";
    for (auto m : t.mid) s += (*Tspace)[m].str() + " | ";
    s += module_name ? module_name(t.x) : std::to_string(t.x);
    return s + ")";
  };
  return c;
}

BarModule diagram_module(int two_n, int two_i, const Ring& ring, bool weighted) {
  auto Xs = diagram_space(two_n, two_i);
  auto Ys = diagram_space(0, two_i);
  auto Ts = diagram_space(two_n, two_n);
  auto As = diagram_space(0, two_n);
  auto TX = composition_table(two_n, two_n, two_i);
  auto AX = composition_table(0, two_n, two_i);
  BarModule m;
  m.name = "TL(" + std::to_string(two_n) + "," + std::to_string(two_i) + ")";
  m.x_size = Xs->size();
  m.y_size = Ys->size();
  auto coef = [&](int loops) -> std::int64_t { return ring.a == 0 ? (loops == 0 ? 1 : 0) : ring.a_power(loops); };
  m.act.resize(Ts->size() * m.x_size);
  for (std::size_t t = 0; t < Ts->size(); ++t)
    for (std::size_t x = 0; x < m.x_size; ++x)
      m.act[t * m.x_size + x] = {coef(TX->loops(t, x)), TX->result(t, x)};
  m.phi.resize(As->size() * m.x_size);
  for (std::size_t a = 0; a < As->size(); ++a)
    for (std::size_t x = 0; x < m.x_size; ++x)
      m.phi[a * m.x_size + x] = {coef(AX->loops(a, x)), AX->result(a, x)};
  if (weighted) {
    const Diagram lmax = L_max(two_i);
    m.y_weight.resize(m.y_size);
    for (std::size_t y = 0; y < m.y_size; ++y) m.y_weight[y] = compose((*Ys)[y], lmax).loops;
    m.close_weight.resize(As->size() * m.x_size);
    for (std::size_t a = 0; a < As->size(); ++a)
      for (std::size_t x = 0; x < m.x_size; ++x)
        m.close_weight[a * m.x_size + x] = AX->loops(a, x) + m.y_weight[AX->result(a, x)];
  }
  m.x_name = [Xs](std::size_t x) { return (*Xs)[x].str(); };
  m.y_name = [Ys](std::size_t y) { return (*Ys)[y].str(); };
  return m;
}

}  // namespace tlh
