#include "tlhom/torext.hpp"

#include <random>
#include <sstream>

namespace tlh {

namespace {

std::int64_t loop_factor(const Ring& r, int loops) {
  if (r.a == 0) return loops == 0 ? 1 : 0;
  return r.a_power(loops);
}

BarModule trivial_module(int two_n) {
  auto T = diagram_space(two_n, two_n);
  BarModule m;
  m.name = "R";
  m.x_size = 1;
  m.act.resize(T->size());
  for (std::size_t t = 0; t < T->size(); ++t) m.act[t] = {static_cast<int>(t) == T->identity_index() ? 1 : 0, 0};
  m.x_name = [](std::size_t) { return std::string("1"); };
  return m;
}

BarModule cell_module_right(int two_n, const Ring& ring) {
  auto T = diagram_space(two_n, two_n);
  auto X = diagram_space(two_n, 0);
  auto tab = composition_table(two_n, two_n, 0);
  BarModule m;
  m.name = "S(" + std::to_string(two_n) + ",0)";
  m.x_size = X->size();
  m.act.resize(T->size() * m.x_size);
  for (std::size_t t = 0; t < T->size(); ++t)
    for (std::size_t x = 0; x < m.x_size; ++x)
      m.act[t * m.x_size + x] = {loop_factor(ring, tab->loops(t, x)), tab->result(t, x)};
  m.x_name = [X](std::size_t x) { return (*X)[x].str(); };
  return m;
}

BarSpec tor_bar_spec(const TorSpec& s, BarModule m, const std::string& what) {
  if (s.two_n < 2 || s.two_n % 2) throw InvalidInput("Tor needs even 2n >= 2");
  if (s.q_max < 0) throw InvalidInput("max degree must be non-negative");
  BarSpec b;
  b.two_n = s.two_n;
  b.ring = s.ring;
  b.left = LeftEnd::augmentation;
  b.normalized = s.normalized;
  b.q_max = s.q_max + 1;
  b.module = std::move(m);
  std::ostringstream id;
  id << "Bar(R,TL_" << s.two_n << "," << what << ";" << s.ring.name() << "," << s.ring.a << ")"
     << (s.normalized ? "n" : "");
  b.id = id.str();
  return b;
}

// Dense linear algebra over F_p with incremental row reduction.
using Vec = std::vector<std::uint32_t>;

struct Echelon {
  std::uint32_t p;
  std::vector<Vec> rows;
  std::vector<std::size_t> pivot;
  std::vector<Vec> comb;  // optional combination tracking

  std::uint32_t inv(std::uint32_t x) const {
    std::uint64_t r = 1, b = x, e = p - 2;
    while (e) {
      if (e & 1) r = r * b % p;
      b = b * b % p;
      e >>= 1;
    }
    return static_cast<std::uint32_t>(r);
  }
  static void axpy(Vec& v, const Vec& w, std::uint64_t c, std::uint32_t p) {
    for (std::size_t k = 0; k < v.size(); ++k)
      if (w[k]) v[k] = static_cast<std::uint32_t>((v[k] + c * w[k]) % p);
  }
  /** Reduces v (and its combination c) against the stored rows; returns the first nonzero index or npos. */
  std::size_t reduce(Vec& v, Vec* c) const {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      std::uint32_t x = v[pivot[r]];
      if (!x) continue;
      std::uint64_t f = p - x;
      axpy(v, rows[r], f, p);
      if (c) axpy(*c, comb[r], f, p);
    }
    for (std::size_t k = 0; k < v.size(); ++k)
      if (v[k]) return k;
    return std::string::npos;
  }
  bool insert(Vec v, Vec c = {}) {
    const bool track = !c.empty();
    std::size_t k = reduce(v, track ? &c : nullptr);
    if (k == std::string::npos) return false;
    std::uint64_t s = inv(v[k]);
    for (auto& x : v) x = static_cast<std::uint32_t>(x * s % p);
    if (track)
      for (auto& x : c) x = static_cast<std::uint32_t>(x * s % p);
    rows.push_back(std::move(v));
    pivot.push_back(k);
    if (track) comb.push_back(std::move(c));
    return true;
  }
};

}  // namespace

Complex build_tor_complex(const TorSpec& spec) {
  return build_bar_complex(tor_bar_spec(spec, trivial_module(spec.two_n), "R"));
}

HomologyTable tor_table(const TorSpec& spec) { return homology_table(build_tor_complex(spec), spec.q_max); }

Complex build_tor_cell_complex(const TorSpec& spec) {
  return build_bar_complex(tor_bar_spec(spec, cell_module_right(spec.two_n, spec.ring), "S"));
}

HomologyTable tor_with_cell(const TorSpec& spec) { return homology_table(build_tor_cell_complex(spec), spec.q_max); }

std::string augmentation_multiplicativity(int two_n, const Ring& ring) {
  auto T = diagram_space(two_n, two_n);
  auto tab = composition_table(two_n, two_n, two_n);
  const int id = T->identity_index();
  auto eps = [&](std::size_t d) -> std::int64_t { return static_cast<int>(d) == id ? 1 : 0; };
  for (std::size_t d = 0; d < T->size(); ++d)
    for (std::size_t e = 0; e < T->size(); ++e) {
      std::int64_t lhs = eps(d) * eps(e);
      std::int64_t rhs = ring.reduce(loop_factor(ring, tab->loops(d, e)) * eps(tab->result(d, e)));
      if (ring.reduce(lhs) != rhs) return (*T)[d].str() + " * " + (*T)[e].str();
    }
  return "";
}

ResolutionTor tor_by_resolution(int two_n, const Ring& field, int q_max) {
  if (field.kind != RingKind::PrimeField) throw InvalidInput("the resolution route runs over F_p");
  if (q_max < 0) throw InvalidInput("max degree must be non-negative");
  const std::uint32_t p = field.p;
  auto T = diagram_space(two_n, two_n);
  auto tab = composition_table(two_n, two_n, two_n);
  const std::size_t N = T->size();
  const std::size_t id = static_cast<std::size_t>(T->identity_index());
  std::vector<std::uint32_t> coef(N * N);
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b = 0; b < N; ++b)
      coef[a * N + b] = static_cast<std::uint32_t>(field.reduce(loop_factor(field, tab->loops(a, b))));

  auto left_mult = [&](std::size_t t, const Vec& v) {
    Vec out(v.size(), 0);
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (!v[k]) continue;
      std::size_t g = k / N, b = k % N;
      std::uint32_t c = coef[t * N + b];
      if (!c) continue;
      std::size_t r = g * N + tab->result(t, b);
      out[r] = static_cast<std::uint32_t>((out[r] + static_cast<std::uint64_t>(c) * v[k]) % p);
    }
    return out;
  };

  ResolutionTor res;
  res.ranks.push_back(1);
  // kernel of eps: A -> k
  std::vector<Vec> kernel;
  for (std::size_t b = 0; b < N; ++b)
    if (b != id) {
      Vec v(N, 0);
      v[b] = 1;
      kernel.push_back(std::move(v));
    }
  // eps-reduced differentials of R (x)_A F
  std::vector<SparseMatrix> boundary;
  for (int s = 0; s <= q_max; ++s) {
    const std::size_t g = res.ranks.back();
    std::vector<Vec> gens;
    Echelon span{p, {}, {}, {}};
    std::mt19937_64 rng(0x7a11 + s);
    std::size_t misses = 0;
    while (span.rows.size() < kernel.size()) {
      Vec v(kernel.empty() ? 0 : kernel[0].size(), 0);
      for (auto& k : kernel) Echelon::axpy(v, k, rng() % p, p);
      Vec w = v;
      if (span.reduce(w, nullptr) == std::string::npos) {
        if (++misses > 64) throw InternalInconsistency("resolution: random generators stall");
        continue;
      }
      for (std::size_t t = 0; t < N; ++t) span.insert(left_mult(t, v));
      gens.push_back(std::move(v));
    }
    if (span.rows.size() != kernel.size()) throw InternalInconsistency("resolution: generators leave the kernel");
    std::vector<SparseMatrix::Triplet> trip;
    for (std::uint32_t j = 0; j < gens.size(); ++j)
      for (std::uint32_t i = 0; i < g; ++i)
        if (gens[j][i * N + id]) trip.push_back({i, j, static_cast<std::int64_t>(gens[j][i * N + id])});
    boundary.push_back(SparseMatrix::from_triplets(static_cast<std::uint32_t>(g),
                                                   static_cast<std::uint32_t>(gens.size()), std::move(trip), p));
    res.ranks.push_back(gens.size());
    if (s == q_max) break;
    // kernel of A^{gens} -> A^g, (j, b) -> b * gens[j]
    const std::size_t m = gens.size() * N;
    Echelon el{p, {}, {}, {}};
    std::vector<Vec> next;
    for (std::size_t c = 0; c < m; ++c) {
      Vec img = left_mult(c % N, gens[c / N]);
      Vec cb(m, 0);
      cb[c] = 1;
      Vec img2 = img;
      Vec cb2 = cb;
      if (el.reduce(img2, &cb2) == std::string::npos) {
        next.push_back(std::move(cb2));
        continue;
      }
      el.insert(std::move(img), std::move(cb));
    }
    kernel = std::move(next);
  }
  for (int q = 0; q <= q_max; ++q) {
    std::size_t r_out = q > 0 ? rank_mod_p(boundary[q - 1], p) : 0;
    std::size_t r_in = rank_mod_p(boundary[q], p);
    res.tor_dims.push_back(res.ranks[q] - r_out - r_in);
  }
  return res;
}

Complex periodic_resolution(int n, const Ring& ring, int s_max) {
  if (n < 1) throw InvalidInput("periodic resolution needs n >= 1");
  Complex c;
  c.ring = ring;
  c.id = "P(R[y]/y^" + std::to_string(n + 1) + ")";
  c.bottom = -1;
  c.top = s_max;
  const std::uint32_t mod = ring.modulus();
  c.basis[{-1, kAllWeights}] = {0};
  for (int s = 0; s <= s_max; ++s) {
    auto& b = c.basis[{s, kAllWeights}];
    for (int j = 0; j <= n; ++j) b.push_back(static_cast<std::uint64_t>(j));
    std::vector<SparseMatrix::Triplet> trip;
    if (s == 0) {
      trip.push_back({0, 0, 1});
      c.d[{0, kAllWeights}] = SparseMatrix::from_triplets(1, n + 1, std::move(trip), mod);
      continue;
    }
    const int m = s % 2 ? 1 : n;
    for (int j = 0; j + m <= n; ++j)
      trip.push_back({static_cast<std::uint32_t>(j + m), static_cast<std::uint32_t>(j), 1});
    c.d[{s, kAllWeights}] = SparseMatrix::from_triplets(n + 1, n + 1, std::move(trip), mod);
  }
  c.describe = [](int q, std::uint64_t j) {
    return q < 0 ? std::string("1") : "y^" + std::to_string(j) + " z_" + std::to_string(q);
  };
  return c;
}

std::vector<ExtEntry> ext_table_truncated_poly(int n, const Ring& ring, int d_max) {
  if (n < 1) throw InvalidInput("Ext over R[y]/(y^{n+1}) needs n >= 1");
  mpq_class fact = 1;
  for (int k = 2; k <= n; ++k) fact *= k;
  if (!ring.is_unit(fact)) throw InvalidInput("n! is not invertible in " + ring.name());
  std::vector<ExtEntry> out;
  int gd = 0, gw = 0;
  for (int s = 0;; ++s) {
    if (s > 0) {
      const int m = s % 2 ? 1 : n;
      gd -= 2 * m;
      gw += m;
      // Hom(-,R) sends multiplication by y^m to eps(y^m) = 0
      if (m == 0) throw InternalInconsistency("periodic resolution is not minimal");
    }
    const int d = -gd - s;
    if (d > d_max) break;
    out.push_back({s, d, gw});
  }
  return out;
}

}  // namespace tlh
