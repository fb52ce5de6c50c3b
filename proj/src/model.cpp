#include "tlhom/model.hpp"

#include <functional>
#include <sstream>

namespace tlh {

int word_degree(const Word& w) {
  int d = 0;
  for (int g : w) d += g;
  return d;
}

int word_weight(const Word& w) {
  int s = 0;
  for (int g : w) s += (g + 1) / 2;
  return s;
}

std::string word_str(const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  for (int g : w) s += "x" + std::to_string(g);
  return s;
}

ModelElement ModelElement::word(Ring ring, Word w, mpq_class c) {
  ModelElement e(ring);
  e.add(w, c);
  return e;
}

mpq_class ModelElement::coefficient(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? mpq_class(0) : it->second;
}

void ModelElement::add(const Word& w, const mpq_class& c) {
  mpq_class v = ring_.normalize(c);
  if (sgn(v) == 0) return;
  auto [it, fresh] = terms_.emplace(w, v);
  if (fresh) return;
  it->second = ring_.normalize(it->second + v);
  if (sgn(it->second) == 0) terms_.erase(it);
}

ModelElement& ModelElement::operator+=(const ModelElement& o) {
  for (auto& [w, c] : o.terms_) add(w, c);
  return *this;
}

ModelElement ModelElement::operator+(const ModelElement& o) const {
  ModelElement r = *this;
  return r += o;
}

ModelElement ModelElement::operator-(const ModelElement& o) const { return *this + o.scaled(-1); }

ModelElement ModelElement::scaled(const mpq_class& c) const {
  ModelElement r(ring_);
  for (auto& [w, v] : terms_) r.add(w, v * c);
  return r;
}

ModelElement ModelElement::operator*(const ModelElement& o) const {
  ModelElement r(ring_);
  for (auto& [u, a] : terms_)
    for (auto& [v, b] : o.terms_) {
      Word w = u;
      w.insert(w.end(), v.begin(), v.end());
      r.add(w, a * b);
    }
  return r;
}

std::optional<std::pair<int, int>> ModelElement::bidegree() const {
  std::optional<std::pair<int, int>> bd;
  for (auto& [w, c] : terms_) {
    std::pair<int, int> x{word_degree(w), word_weight(w)};
    if (bd && *bd != x) return std::nullopt;
    bd = x;
  }
  return bd;
}

std::string ModelElement::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (auto& [w, c] : terms_) {
    std::string cs = c.get_str();
    if (!s.empty()) s += (cs[0] == '-') ? " - " : " + ";
    else if (cs[0] == '-') s += "-";
    if (cs[0] == '-') cs.erase(0, 1);
    if (cs != "1" || w.empty()) s += cs + (w.empty() ? "" : "*");
    if (!w.empty()) s += word_str(w);
  }
  return s;
}

ModelElement apply_derivation(const GeneratorImages& g, const ModelElement& x) {
  ModelElement r(x.ring());
  for (auto& [w, c] : x.terms()) {
    int prefix_degree = 0;
    for (std::size_t t = 0; t < w.size(); ++t) {
      auto it = g.find(w[t]);
      if (it == g.end()) throw InvalidInput("derivation undefined on x" + std::to_string(w[t]));
      const mpq_class sign = prefix_degree % 2 ? -1 : 1;
      for (auto& [img, v] : it->second.terms()) {
        Word nw(w.begin(), w.begin() + t);
        nw.insert(nw.end(), img.begin(), img.end());
        nw.insert(nw.end(), w.begin() + t + 1, w.end());
        r.add(nw, sign * c * v);
      }
      prefix_degree += w[t];
    }
  }
  return r;
}

namespace {

mpz_class binom(int n, int k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

mpz_class factorial(int n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

void check_n(int n) {
  if (n < 1 || n > 30) throw InvalidInput("model needs 1 <= n <= 30");
}

}  // namespace

GeneratorImages model_generator_images(int n, const Ring& ring) {
  check_n(n);
  GeneratorImages g;
  for (int i = 1; i <= n; ++i) {
    ModelElement e(ring);
    if (i == 1) {
      e.add({}, ring.a);
    } else {
      for (int j = 1; j < i; ++j) e.add({2 * j - 1, 2 * (i - j) - 1}, binom(i, j));
    }
    g.emplace(2 * i - 1, e);
  }
  return g;
}

ModelElement model_d(const ModelElement& x, int n) { return apply_derivation(model_generator_images(n, x.ring()), x); }

std::vector<Word> model_basis(int n, int d, int w) {
  std::vector<Word> out;
  Word cur;
  std::function<void(int, int)> rec = [&](int dl, int wl) {
    if (dl == 0 && wl == 0) {
      out.push_back(cur);
      return;
    }
    for (int i = 1; i <= n; ++i) {
      const int g = 2 * i - 1;
      if (g > dl || i > wl) break;
      cur.push_back(g);
      rec(dl - g, wl - i);
      cur.pop_back();
    }
  };
  if (d >= 0 && w >= 0) rec(d, w);
  return out;
}

std::vector<Word> model_basis_degree(int n, int d) {
  std::vector<Word> out;
  Word cur;
  std::function<void(int)> rec = [&](int dl) {
    if (dl == 0) {
      out.push_back(cur);
      return;
    }
    for (int i = 1; i <= n && 2 * i - 1 <= dl; ++i) {
      cur.push_back(2 * i - 1);
      rec(dl - (2 * i - 1));
      cur.pop_back();
    }
  };
  if (d >= 0) rec(d);
  return out;
}

WordComplex build_derivation_complex(int n, const GeneratorImages& g, const Ring& ring, int d_max,
                                     const std::string& id) {
  check_n(n);
  if (d_max < 0) throw InvalidInput("max degree must be non-negative");
  bool weighted = ring.graded();
  for (auto& [gen, img] : g)
    for (auto& [w, c] : img.terms())
      if (word_weight(w) != (gen + 1) / 2) weighted = false;

  WordComplex out;
  Complex& c = out.complex;
  c.ring = ring;
  c.id = id;
  c.weighted = weighted;
  c.bottom = 0;
  c.top = d_max;
  std::map<BlockKey, std::map<Word, std::uint32_t>> index;
  for (int d = 0; d <= d_max; ++d) {
    std::vector<std::pair<BlockKey, std::vector<Word>>> blocks;
    if (weighted) {
      for (int w = (d + 1) / 2; w <= d; ++w) {
        auto b = model_basis(n, d, w);
        if (!b.empty()) blocks.push_back({{d, w}, std::move(b)});
      }
    } else {
      blocks.push_back({{d, kAllWeights}, model_basis_degree(n, d)});
    }
    for (auto& [k, words] : blocks) {
      auto& idx = index[k];
      for (std::uint32_t t = 0; t < words.size(); ++t) idx[words[t]] = t;
      std::vector<std::uint64_t> labels(words.size());
      for (std::uint32_t t = 0; t < words.size(); ++t) labels[t] = t;
      c.basis[k] = std::move(labels);
      if (d > 0) {
        BlockKey tk{d - 1, k.w};
        auto tit = index.find(tk);
        std::vector<SparseMatrix::Triplet> trip;
        for (std::uint32_t col = 0; col < words.size(); ++col) {
          ModelElement img = apply_derivation(g, ModelElement::word(ring, words[col]));
          for (auto& [w, v] : img.terms()) {
            if (tit == index.end() || !tit->second.count(w))
              throw InternalInconsistency("derivation leaves block " + block_name(k) + " at " + word_str(w));
            if (v.get_den() != 1 || !v.get_num().fits_slong_p())
              throw InvalidInput("matrix entry " + v.get_str() + " is not a 64-bit integer");
            trip.push_back({tit->second.at(w), col, v.get_num().get_si()});
          }
        }
        std::uint32_t rows = tit == index.end() ? 0 : static_cast<std::uint32_t>(tit->second.size());
        c.d[k] = SparseMatrix::from_triplets(rows, static_cast<std::uint32_t>(words.size()), std::move(trip),
                                             ring.modulus());
      }
      out.words[k] = std::move(words);
    }
  }
  auto words = out.words;
  c.describe = [words](int q, std::uint64_t i) {
    for (auto& [k, ws] : words)
      if (k.q == q && i < ws.size()) return word_str(ws[i]);
    return std::to_string(i);
  };
  return out;
}

WordComplex build_model_complex(int n, const Ring& ring, int d_max) {
  std::ostringstream id;
  id << "M(" << 2 * n << ";" << ring.name() << "," << ring.a << ")";
  return build_derivation_complex(n, model_generator_images(n, ring), ring, d_max, id.str());
}

ModelElement model_z0(int n, const Ring& ring) {
  ModelElement z(ring);
  for (int j = 1; j <= n; ++j) z.add({2 * j - 1, 2 * (n + 1 - j) - 1}, binom(n + 1, j));
  return z;
}

mpz_class z0_content(int n) {
  mpz_class g = 0;
  for (int j = 1; j <= n; ++j) g = gcd(g, binom(n + 1, j));
  return g;
}

namespace {

std::vector<std::vector<mpz_class>> dense_d(int n, const std::vector<Word>& from, const std::vector<Word>& to,
                                            const std::function<bool(const Word&)>& keep) {
  std::map<Word, std::size_t> row;
  for (std::size_t r = 0; r < to.size(); ++r) row[to[r]] = r;
  std::vector<std::vector<mpz_class>> m(to.size(), std::vector<mpz_class>(from.size(), 0));
  for (std::size_t c = 0; c < from.size(); ++c) {
    ModelElement img = model_d(ModelElement::word(Ring::Z(), from[c]), n);
    for (auto& [w, v] : img.terms()) {
      if (!keep(w)) continue;
      m[row.at(w)][c] = v.get_num();
    }
  }
  return m;
}

SparseMatrix to_sparse(const std::vector<std::vector<mpz_class>>& m, std::size_t cols) {
  std::vector<SparseMatrix::Triplet> t;
  for (std::size_t r = 0; r < m.size(); ++r)
    for (std::size_t c = 0; c < cols; ++c)
      if (sgn(m[r][c])) t.push_back({static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(c), m[r][c].get_si()});
  return SparseMatrix::from_triplets(static_cast<std::uint32_t>(m.size()), static_cast<std::uint32_t>(cols), t);
}

}  // namespace

CycleRankReport cycles_at_top(int n) {
  check_n(n);
  auto src = model_basis(n, 2 * n, n + 1);
  auto dst = model_basis(n, 2 * n - 1, n + 1);
  auto m = dense_d(n, src, dst, [](const Word&) { return true; });
  auto ker = integer_kernel(m, src.size());
  CycleRankReport r;
  r.rank = ker.size();
  if (ker.size() == 1) {
    ModelElement z = model_z0(n, Ring::Z());
    std::optional<mpq_class> ratio;
    bool ok = true;
    for (std::size_t c = 0; c < src.size(); ++c) {
      mpq_class zc = z.coefficient(src[c]);
      const mpz_class& kc = ker[0][c];
      if (sgn(kc) == 0) {
        ok = ok && sgn(zc) == 0;
        continue;
      }
      mpq_class q = zc / mpq_class(kc);
      q.canonicalize();
      if (!ratio) ratio = q;
      ok = ok && *ratio == q;
    }
    r.contains_z0 = ok && ratio && ratio->get_den() == 1 && sgn(*ratio) != 0;
  }
  return r;
}

QuotientReport quotient_detection(int n) {
  if (n < 2) throw InvalidInput("quotient detection needs n >= 2");
  const int top = 2 * n - 1;
  auto keep = [top](const Word& w) { return w.empty() || w.back() == top; };
  auto filtered = [&](int d, int w) {
    std::vector<Word> out;
    for (auto& x : model_basis(n, d, w))
      if (keep(x)) out.push_back(x);
    return out;
  };
  auto above = filtered(2 * n + 1, n + 1);
  auto mid = filtered(2 * n, n + 1);
  auto below = filtered(2 * n - 1, n + 1);
  auto d_in = dense_d(n, above, mid, keep);
  auto d_out = dense_d(n, mid, below, keep);
  QuotientReport r;
  r.basis = mid;
  r.homology = homology_at(to_sparse(d_in, above.size()), to_sparse(d_out, mid.size()), Ring::Z(),
                           "quotient (2n,n+1)");
  ModelElement img(Ring::Z());
  const auto z0 = model_z0(n, Ring::Z());
  for (auto& [w, c] : z0.terms())
    if (keep(w)) img.add(w, c);
  r.z0_coefficient = img.coefficient({1, top});
  r.z0_image_is_single_term = img.terms().size() == 1;
  return r;
}

MasseyResult massey_general(int n, int arity, const DefiningSystem& sys) {
  MasseyResult r;
  if (arity < 2) throw InvalidInput("Massey product needs arity >= 2");
  auto bar = [](const ModelElement& a) {
    auto bd = a.bidegree();
    if (!bd) return a;
    return (bd->first + 1) % 2 ? a.scaled(-1) : a;
  };
  auto get = [&](int j, int k) -> const ModelElement* {
    auto it = sys.find({j, k});
    return it == sys.end() ? nullptr : &it->second;
  };
  Ring ring = sys.empty() ? Ring::Q() : sys.begin()->second.ring();
  for (int len = 1; len <= arity; ++len)
    for (int j = 0; j + len <= arity; ++j) {
      const int k = j + len;
      if (j == 0 && k == arity) continue;
      const ModelElement* a = get(j, k);
      if (!a) {
        r.violated = {j, k};
        r.report = "missing entry a(" + std::to_string(j) + "," + std::to_string(k) + ")";
        return r;
      }
      if (!a->is_zero() && !a->bidegree()) {
        r.violated = {j, k};
        r.report = "entry a(" + std::to_string(j) + "," + std::to_string(k) + ") is not homogeneous";
        return r;
      }
      ModelElement expect(ring);
      for (int l = j + 1; l < k; ++l) expect += bar(*get(j, l)) * *get(l, k);
      ModelElement da = model_d(*a, n);
      if (!(da == expect)) {
        r.violated = {j, k};
        r.report = "condition fails at (" + std::to_string(j) + "," + std::to_string(k) + "): d(a) = " + da.str() +
                   ", expected " + expect.str();
        return r;
      }
    }
  ModelElement v(ring);
  for (int l = 1; l < arity; ++l) v += bar(*get(0, l)) * *get(l, arity);
  int dsum = 0, wsum = 0;
  for (int j = 0; j < arity; ++j) {
    auto bd = get(j, j + 1)->bidegree();
    if (bd) {
      dsum += bd->first;
      wsum += bd->second;
    }
  }
  auto vb = v.bidegree();
  if (!v.is_zero() && (!vb || *vb != std::make_pair(arity - 2 + dsum, wsum))) {
    r.report = "product does not have the expected bidegree";
    return r;
  }
  r.defined = true;
  r.system = sys;
  r.value = v;
  // uniqueness: every forced entry sits in a bidegree where d is injective
  r.unique = true;
  for (auto& [jk, a] : sys) {
    if (jk.second - jk.first < 2) continue;
    auto bd = a.bidegree();
    if (!bd) continue;
    auto src = model_basis(n, bd->first, bd->second);
    auto dst = model_basis(n, bd->first - 1, bd->second);
    std::map<Word, std::uint32_t> row;
    for (std::uint32_t t = 0; t < dst.size(); ++t) row[dst[t]] = t;
    std::vector<SparseMatrix::Triplet> trip;
    for (std::uint32_t c = 0; c < src.size(); ++c) {
      const auto img = model_d(ModelElement::word(Ring::Z(ring.a), src[c]), n);
      for (auto& [w, val] : img.terms())
        if (row.count(w)) trip.push_back({row[w], c, val.get_num().get_si()});
    }
    auto m = SparseMatrix::from_triplets(static_cast<std::uint32_t>(dst.size()), static_cast<std::uint32_t>(src.size()),
                                         trip, ring.modulus());
    if (rank_over_field(m, ring.is_field() ? ring : Ring::Q()) != src.size()) r.unique = false;
  }
  return r;
}

MasseyResult massey_power(int n, const Ring& ring, int arity) {
  check_n(n);
  if (arity < 3) throw InvalidInput("Massey power needs arity >= 3");
  MasseyResult r;
  if (arity > n + 1) {
    r.report = "missing generator x" + std::to_string(2 * (arity - 1) - 1) + " in M(" + std::to_string(2 * n) + ")";
    return r;
  }
  if (!ring.is_unit(mpq_class(factorial(arity - 1)))) {
    r.report = std::to_string(arity - 1) + "! is not invertible in " + ring.name();
    return r;
  }
  DefiningSystem sys;
  for (int j = 0; j < arity; ++j)
    for (int k = j + 1; k <= arity; ++k) {
      if (j == 0 && k == arity) continue;
      const int m = k - j;
      sys.emplace(std::make_pair(j, k), ModelElement::generator(ring, 2 * m - 1, mpq_class(1, 1) / factorial(m)));
    }
  return massey_general(n, arity, sys);
}

CnCoalgebra CnCoalgebra::make(int n, const Ring& ring) {
  check_n(n);
  CnCoalgebra c;
  c.n = n;
  c.ring = ring;
  c.psi.resize(n + 1);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= i; ++j) c.psi[i].emplace_back(j, i - j, binom(i, j).get_si());
  return c;
}

bool CnCoalgebra::coassociative() const {
  // (psi (x) 1) psi and (1 (x) psi) psi as maps to triples
  for (int i = 0; i <= n; ++i) {
    std::map<std::tuple<int, int, int>, std::int64_t> left, right;
    for (auto [j, k, c] : psi[i]) {
      for (auto [a, b, e] : psi[j]) left[{a, b, k}] += c * e;
      for (auto [a, b, e] : psi[k]) right[{j, a, b}] += c * e;
    }
    std::erase_if(left, [](auto& kv) { return kv.second == 0; });
    std::erase_if(right, [](auto& kv) { return kv.second == 0; });
    if (left != right) return false;
  }
  return true;
}

bool CnCoalgebra::counital() const {
  for (int i = 0; i <= n; ++i) {
    std::map<int, std::int64_t> l, r;
    for (auto [j, k, c] : psi[i]) {
      l[k] += counit(j) * c;
      r[j] += c * counit(k);
    }
    std::erase_if(l, [](auto& kv) { return kv.second == 0; });
    std::erase_if(r, [](auto& kv) { return kv.second == 0; });
    std::map<int, std::int64_t> e{{i, 1}};
    if (l != e || r != e) return false;
  }
  return true;
}

WordComplex cobar_of_Cn(int n, const Ring& ring, int d_max) {
  if (!ring.a_is_zero()) throw InvalidInput("the cobar identification needs a = 0");
  CnCoalgebra C = CnCoalgebra::make(n, ring);
  if (!C.coassociative() || !C.counital()) throw InternalInconsistency("C_n coproduct table is not a coalgebra");

  // bars [c_1 | ... | c_k] of augmentation-ideal elements c in 1..n; s^{-1}x_{2c-1} has bidegree (2c-1, c)
  std::map<BlockKey, std::vector<std::vector<int>>> bars;
  std::vector<std::vector<int>> frontier{{}};
  bars[{0, 0}].push_back({});
  while (!frontier.empty()) {
    std::vector<std::vector<int>> next;
    for (auto& b : frontier)
      for (int c = 1; c <= n; ++c) {
        auto nb = b;
        nb.push_back(c);
        int d = 0, w = 0;
        for (int x : nb) d += 2 * x - 1, w += x;
        if (d > d_max) continue;
        bars[{d, w}].push_back(nb);
        next.push_back(nb);
      }
    frontier = std::move(next);
  }
  WordComplex out;
  Complex& cx = out.complex;
  cx.ring = ring;
  cx.id = "Cobar(C_" + std::to_string(n) + ";" + ring.name() + ")";
  cx.weighted = true;
  cx.top = d_max;
  std::map<BlockKey, std::map<std::vector<int>, std::uint32_t>> index;
  for (auto& [k, list] : bars) {
    std::sort(list.begin(), list.end(), [](const std::vector<int>& a, const std::vector<int>& b) {
      return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    });
    for (std::uint32_t t = 0; t < list.size(); ++t) index[k][list[t]] = t;
  }
  for (auto& [k, list] : bars) {
    std::vector<std::uint64_t> labels(list.size());
    for (std::uint32_t t = 0; t < list.size(); ++t) labels[t] = t;
    cx.basis[k] = labels;
    std::vector<Word> words;
    for (auto& b : list) {
      Word w;
      for (int x : b) w.push_back(2 * x - 1);
      words.push_back(w);
    }
    out.words[k] = words;
    if (k.q == 0) continue;
    BlockKey tk{k.q - 1, k.w};
    std::vector<SparseMatrix::Triplet> trip;
    for (std::uint32_t col = 0; col < list.size(); ++col) {
      const auto& b = list[col];
      int sign_deg = 0;
      for (std::size_t t = 0; t < b.size(); ++t) {
        for (auto [j, l, c] : C.psi[b[t]]) {
          if (j == 0 || l == 0) continue;  // reduced coproduct
          std::vector<int> nb(b.begin(), b.begin() + t);
          nb.push_back(j);
          nb.push_back(l);
          nb.insert(nb.end(), b.begin() + t + 1, b.end());
          trip.push_back({index.at(tk).at(nb), col, sign_deg % 2 ? -c : c});
        }
        sign_deg += 2 * b[t] - 1;
      }
    }
    auto tit = index.find(tk);
    std::uint32_t rows = tit == index.end() ? 0 : static_cast<std::uint32_t>(tit->second.size());
    cx.d[k] = SparseMatrix::from_triplets(rows, static_cast<std::uint32_t>(list.size()), trip, ring.modulus());
  }
  auto words = out.words;
  cx.describe = [words](int q, std::uint64_t i) {
    for (auto& [k, ws] : words)
      if (k.q == q && i < ws.size()) return word_str(ws[i]);
    return std::to_string(i);
  };
  return out;
}

std::string compare_word_complexes(const WordComplex& a, const WordComplex& b) {
  if (a.words.size() != b.words.size()) return "different block sets";
  for (auto& [k, wa] : a.words) {
    auto it = b.words.find(k);
    if (it == b.words.end()) return "block " + block_name(k) + " missing";
    if (it->second != wa) return "basis differs at " + block_name(k);
    const SparseMatrix* da = a.complex.differential(k);
    const SparseMatrix* db = b.complex.differential(k);
    if ((da == nullptr) != (db == nullptr)) return "differential presence differs at " + block_name(k);
    if (da && !(*da == *db)) return "differential differs at " + block_name(k);
  }
  return "";
}

GeneratorImages bockstein_images() {
  Ring f2 = Ring::Fp(2);
  GeneratorImages g;
  g.emplace(1, ModelElement(f2));
  g.emplace(3, ModelElement::word(f2, {1, 1}));
  return g;
}

WordComplex bockstein_complex_2n4(int d_max) {
  return build_derivation_complex(2, bockstein_images(), Ring::Fp(2), d_max, "beta(T[x1,x3];F2)");
}

}  // namespace tlh
