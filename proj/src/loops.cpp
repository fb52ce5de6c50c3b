#include "tlhom/loops.hpp"

#include <algorithm>
#include <sstream>

namespace tlh {

Complex build_loops_complex(const LoopsSpec& spec) {
  if (spec.two_n < 2 || spec.two_n % 2 || spec.two_i < 0 || spec.two_i % 2)
    throw InvalidInput("loops complex needs even 2n >= 2 and even 2i >= 0");
  if (spec.q_max < 0) throw InvalidInput("max degree must be non-negative");
  BarSpec b;
  b.two_n = spec.two_n;
  b.ring = spec.ring;
  b.left = LeftEnd::cup;
  b.normalized = spec.normalized;
  b.weighted = spec.weighted;
  b.q_max = spec.q_max;
  b.module = diagram_module(spec.two_n, spec.two_i, spec.ring, spec.weighted);
  std::ostringstream id;
  id << "L(0," << spec.two_n << "," << spec.two_i << ";" << spec.ring.name() << "," << spec.ring.a << ")"
     << (spec.normalized ? "n" : "");
  b.id = id.str();
  return build_bar_complex(b);
}

std::uint64_t pinned_count(int two_n, int two_i, int q) {
  if (q == 0) return diagram_space(0, two_i)->size();
  BarLayout layout(two_n, LeftEnd::cup, false, diagram_space(two_n, two_i)->size());
  return layout.count(q);
}

Pinned pinned_basis(int two_n, int two_i, int q, std::uint64_t idx) {
  if (q == 0) return {(*diagram_space(0, two_i))[idx]};
  auto X = diagram_space(two_n, two_i);
  BarLayout layout(two_n, LeftEnd::cup, false, X->size());
  BarTuple t = layout.decode(q, idx);
  Pinned p;
  p.push_back((*diagram_space(0, two_n))[t.a0]);
  auto T = diagram_space(two_n, two_n);
  for (auto m : t.mid) p.push_back((*T)[m]);
  p.push_back((*X)[t.x]);
  return p;
}

LoopsElement LoopsElement::basis(int two_n, int two_i, Ring ring, Pinned p, std::int64_t coef) {
  LoopsElement e(two_n, two_i, ring);
  e.add(p, coef);
  return e;
}

LoopsElement LoopsElement::unit(int two_n, Ring ring) { return basis(two_n, 0, ring, {Diagram::from_partner(0, 0, {})}); }

void LoopsElement::add(const Pinned& p, std::int64_t coef) {
  coef = ring_.reduce(coef);
  if (coef == 0) return;
  auto it = terms_.find(p);
  if (it == terms_.end()) {
    terms_.emplace(p, coef);
    return;
  }
  it->second = ring_.reduce(it->second + coef);
  if (it->second == 0) terms_.erase(it);
}

LoopsElement& LoopsElement::operator+=(const LoopsElement& o) {
  for (auto& [p, c] : o.terms_) add(p, c);
  return *this;
}

LoopsElement LoopsElement::operator-() const { return scaled(-1); }

LoopsElement LoopsElement::scaled(std::int64_t c) const {
  LoopsElement r(two_n_, two_i_, ring_);
  for (auto& [p, v] : terms_) r.add(p, v * c);
  return r;
}

std::string LoopsElement::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (auto& [p, c] : terms_) {
    if (!s.empty()) s += " + ";
    s += std::to_string(c) + "*(";
    for (std::size_t k = 0; k < p.size(); ++k) s += (k ? " | " : "") + p[k].str();
    s += ")";
  }
  return s;
}

namespace {

std::int64_t loop_factor(const Ring& r, int loops) {
  if (r.a == 0) return loops == 0 ? 1 : 0;
  return r.a_power(loops);
}

}  // namespace

LoopsElement loops_d(const LoopsElement& x) {
  LoopsElement r(x.two_n(), x.two_i(), x.ring());
  for (auto& [p, c] : x.terms()) {
    const int q = pinned_degree(p);
    for (int j = 0; j < q; ++j) {
      auto m = compose(p[j], p[j + 1]);
      std::int64_t f = loop_factor(x.ring(), m.loops);
      if (f == 0) continue;
      Pinned np;
      np.reserve(p.size() - 1);
      for (int k = 0; k < j; ++k) np.push_back(p[k]);
      np.push_back(m.diagram);
      for (int k = j + 2; k <= q; ++k) np.push_back(p[k]);
      r.add(np, (j % 2 ? -c : c) * f);
    }
  }
  return r;
}

LoopsElement loops_multiply(const LoopsElement& x, const LoopsElement& y) {
  if (x.two_n() != y.two_n() || x.two_i() != 0) throw InvalidInput("loops product: mismatched strand counts");
  LoopsElement r(y.two_n(), y.two_i(), y.ring());
  for (auto& [p, c] : x.terms())
    for (auto& [s, e] : y.terms()) {
      if (pinned_degree(p) == 0) {
        r.add(s, c * e);
        continue;
      }
      auto m = compose(p.back(), s.front());
      std::int64_t f = loop_factor(x.ring(), m.loops);
      if (f == 0) continue;
      Pinned np(p.begin(), p.end() - 1);
      np.push_back(m.diagram);
      np.insert(np.end(), s.begin() + 1, s.end());
      r.add(np, c * e * f);
    }
  return r;
}

LoopsElement phi(int two_n, Ring ring) {
  if (two_n < 2) throw InvalidInput("phi needs n >= 1");
  return LoopsElement::basis(two_n, 0, ring, {Phi_l(two_n), Phi_r(two_n)});
}

int loops_weight(const Pinned& p, int two_i) {
  Diagram cur = p.front();
  int w = 0;
  for (std::size_t k = 1; k < p.size(); ++k) {
    auto m = compose(cur, p[k]);
    w += m.loops;
    cur = m.diagram;
  }
  return w + compose(cur, L_max(two_i)).loops;
}

Pinned hook(const Pinned& p, int two_n) {
  if (p.size() == 1) return p;
  const Diagram r1 = R_k(two_n + 2, 1);
  const Diagram l2 = L_k(two_n + 2, 2);
  auto glue = [](const Diagram& a, const Diagram& b) {
    auto m = compose(a, b);
    if (m.loops) throw InternalInconsistency("hook map created a loop");
    return m.diagram;
  };
  Pinned out;
  out.push_back(glue(p.front(), r1));
  for (std::size_t k = 1; k + 1 < p.size(); ++k) out.push_back(glue(glue(l2, p[k]), r1));
  out.push_back(glue(l2, p.back()));
  return out;
}

LoopsElement hook(const LoopsElement& x) {
  LoopsElement r(x.two_n() + 2, x.two_i(), x.ring());
  for (auto& [p, c] : x.terms()) r.add(hook(p, x.two_n()), c);
  return r;
}

LoopsElement involution(const LoopsElement& x, Axis axis) {
  if (axis == Axis::left_right && x.two_i() != 0) throw InvalidInput("left-right involution needs i = 0");
  LoopsElement r(x.two_n(), x.two_i(), x.ring());
  for (auto& [p, c] : x.terms()) {
    Pinned np;
    for (auto& d : p) np.push_back(reflect(d, axis));
    std::int64_t s = 1;
    if (axis == Axis::left_right) {
      std::reverse(np.begin(), np.end());
      const int q = pinned_degree(p);
      if ((q * (q - 1) / 2) % 2) s = -1;
    }
    r.add(np, s * c);
  }
  return r;
}

}  // namespace tlh
