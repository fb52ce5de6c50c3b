#include "tlhom/chaincore.hpp"

#include <iomanip>
#include <set>
#include <sstream>

#include <json.hpp>

#include "tlhom/cache.hpp"

namespace tlh {

std::string block_name(BlockKey k) {
  std::string w = k.w == kAllWeights ? "ALL" : std::to_string(k.w);
  return "(q=" + std::to_string(k.q) + ", w=" + w + ")";
}

std::size_t Complex::dim(BlockKey k) const {
  auto it = basis.find(k);
  return it == basis.end() ? 0 : it->second.size();
}

std::size_t Complex::dim(int q) const {
  std::size_t s = 0;
  for (auto& [k, b] : basis)
    if (k.q == q) s += b.size();
  return s;
}

const SparseMatrix* Complex::differential(BlockKey k) const {
  auto it = d.find(k);
  return it == d.end() ? nullptr : &it->second;
}

std::vector<int> Complex::weights() const {
  std::set<int> ws;
  for (auto& [k, b] : basis) ws.insert(k.w);
  return {ws.begin(), ws.end()};
}

std::string Complex::label(BlockKey k, std::size_t i) const {
  auto it = basis.find(k);
  if (it == basis.end() || i >= it->second.size()) return "?";
  if (describe) return describe(k.q, it->second[i]);
  return std::to_string(it->second[i]);
}

DSquaredReport check_d_squared(const Complex& c) {
  DSquaredReport rep;
  for (auto& [k, m] : c.d) {
    if (m.cols() != c.dim(k) || m.rows() != c.dim(BlockKey{k.q - 1, k.w})) {
      rep.ok = false;
      rep.violations.push_back("matrix shape mismatch at " + block_name(k));
      continue;
    }
    const SparseMatrix* below = c.differential({k.q - 1, k.w});
    if (!below) continue;
    auto prod = multiply(*below, m, c.ring.modulus());
    if (prod.is_zero()) continue;
    rep.ok = false;
    std::uint32_t col = 0;
    while (prod.col_begin(col) == prod.col_end(col)) ++col;
    rep.violations.push_back("d^2 != 0 at " + block_name(k) + ", witness " + c.label(k, col));
  }
  return rep;
}

std::vector<mpz_class> block_factors(const Complex& c, BlockKey k) {
  const SparseMatrix* m = c.differential(k);
  if (!m || m->is_zero()) return {};
  std::string key;
  if (cache::directory()) {
    std::uint64_t h = cache::fnv1a(std::string(cache::kCodeVersion) + "|" + c.ring.name() + "|" + c.id + "|" +
                                   block_name(k));
    key = "snf-" + cache::hex(cache::matrix_hash(*m, h));
    if (auto hit = cache::load_factors(key)) return *hit;
  }
  std::vector<mpz_class> f;
  if (c.ring.is_field())
    f.assign(rank_over_field(*m, c.ring), mpz_class(1));
  else
    f = smith_normal_form(*m);
  if (!key.empty()) cache::store_factors(key, c.id + " " + block_name(k), f);
  return f;
}

HomologyTable homology_table(const Complex& c, int q_max) {
  auto rep = check_d_squared(c);
  if (!rep.ok) throw InternalInconsistency(rep.violations.front());
  HomologyTable t;
  t.id = c.id;
  t.ring = c.ring;
  t.q_max = q_max;
  std::map<BlockKey, std::vector<mpz_class>> memo;
  auto factors = [&](BlockKey k) -> const std::vector<mpz_class>& {
    auto it = memo.find(k);
    if (it == memo.end()) it = memo.emplace(k, block_factors(c, k)).first;
    return it->second;
  };
  for (auto& [k, b] : c.basis) {
    if (k.q > q_max || k.q > c.top) continue;
    std::size_t r_out = k.q > c.bottom ? factors(k).size() : 0;
    const bool exact = k.q + 1 <= c.top;
    std::vector<mpz_class> in = exact ? factors({k.q + 1, k.w}) : std::vector<mpz_class>{};
    HomologySummary h = homology_from_ranks(b.size(), r_out, in, c.ring.is_field());
    h.exact = exact;
    t.entries[k] = h;
  }
  return t;
}

HomologySummary HomologyTable::total(int q) const {
  HomologySummary s;
  std::vector<mpz_class> tors;
  for (auto& [k, h] : entries) {
    if (k.q != q) continue;
    s.free_rank += h.free_rank;
    tors.insert(tors.end(), h.torsion.begin(), h.torsion.end());
    s.exact = s.exact && h.exact;
  }
  s.torsion = normalize_diagonal(tors);
  return s;
}

HomologyTable HomologyTable::collapsed() const {
  HomologyTable t = *this;
  t.entries.clear();
  for (auto& [k, h] : entries)
    if (!t.entries.count({k.q, kAllWeights})) t.entries[{k.q, kAllWeights}] = total(k.q);
  return t;
}

HomologyTable HomologyTable::only_weight(int w) const {
  HomologyTable t = *this;
  std::erase_if(t.entries, [w](const auto& e) { return e.first.w != w; });
  return t;
}

std::string HomologyTable::aligned() const {
  std::ostringstream os;
  os << "# " << id << " over " << ring.name() << "\n";
  os << std::setw(4) << "q" << std::setw(6) << "w" << std::setw(8) << "free" << "  torsion\n";
  for (auto& [k, h] : entries) {
    os << std::setw(4) << k.q << std::setw(6) << (k.w == kAllWeights ? std::string("ALL") : std::to_string(k.w))
       << std::setw(8) << h.free_rank << "  ";
    if (h.torsion.empty()) os << "-";
    for (std::size_t i = 0; i < h.torsion.size(); ++i) os << (i ? "," : "") << h.torsion[i].get_str();
    if (!h.exact) os << "  (kernel only)";
    os << "\n";
  }
  return os.str();
}

std::string HomologyTable::csv() const {
  std::ostringstream os;
  os << "q,w,free_rank,torsion_rank,torsion,exact\n";
  for (auto& [k, h] : entries) {
    os << k.q << ',' << (k.w == kAllWeights ? std::string("ALL") : std::to_string(k.w)) << ',' << h.free_rank
       << ',' << h.torsion.size() << ',';
    for (std::size_t i = 0; i < h.torsion.size(); ++i) os << (i ? ";" : "") << h.torsion[i].get_str();
    os << ',' << (h.exact ? 1 : 0) << '\n';
  }
  return os.str();
}

std::string HomologyTable::json() const {
  nlohmann::json j;
  j["complex"] = id;
  j["ring"] = ring.name();
  j["q_max"] = q_max;
  j["entries"] = nlohmann::json::array();
  for (auto& [k, h] : entries) {
    nlohmann::json e;
    e["q"] = k.q;
    if (k.w == kAllWeights)
      e["w"] = "ALL";
    else
      e["w"] = k.w;
    e["free_rank"] = h.free_rank;
    e["torsion"] = nlohmann::json::array();
    for (auto& t : h.torsion) e["torsion"].push_back(t.get_str());
    e["exact"] = h.exact;
    j["entries"].push_back(e);
  }
  return j.dump(2);
}

Complex totalize(const std::vector<Complex>& columns, const std::vector<ChainMap>& connecting) {
  if (columns.empty()) return {};
  if (connecting.size() + 1 != columns.size())
    throw InvalidInput("totalize: need one connecting map per adjacent pair of columns");
  const std::uint32_t mod = columns[0].ring.modulus();
  // chain-map and square-zero checks
  for (std::size_t p = 1; p < columns.size(); ++p) {
    const Complex& src = columns[p];
    const Complex& dst = columns[p - 1];
    const ChainMap& f = connecting[p - 1];
    for (auto& [k, m] : f) {
      if (m.cols() != src.dim(k) || m.rows() != dst.dim(k))
        throw InvalidInput("totalize: connecting map shape mismatch at " + block_name(k));
      const SparseMatrix* ds = src.differential(k);
      const SparseMatrix* dd = dst.differential(k);
      auto below = f.find({k.q - 1, k.w});
      SparseMatrix lhs = ds && below != f.end() ? multiply(below->second, *ds, mod)
                                                 : SparseMatrix(dst.dim({k.q - 1, k.w}), src.dim(k));
      SparseMatrix rhs = dd ? multiply(*dd, m, mod) : SparseMatrix(dst.dim({k.q - 1, k.w}), src.dim(k));
      if (!(lhs == rhs))
        throw InvalidInput("totalize: connecting map " + std::to_string(p) + " is not a chain map at " +
                           block_name(k));
      if (p >= 2) {
        auto g = connecting[p - 2].find(k);
        if (g != connecting[p - 2].end() && !multiply(g->second, m, mod).is_zero())
          throw InvalidInput("totalize: consecutive connecting maps do not compose to zero at " + block_name(k));
      }
    }
  }
  Complex tot;
  tot.ring = columns[0].ring;
  tot.weighted = columns[0].weighted;
  tot.id = "total[";
  for (auto& c : columns) tot.id += c.id + ";";
  tot.id += "]";
  tot.bottom = INT_MAX;
  tot.top = INT_MAX;
  // offsets of each (p, q, w) piece inside total block (q+p, w)
  std::map<std::tuple<int, int, int>, std::size_t> offset;
  for (std::size_t p = 0; p < columns.size(); ++p) {
    const Complex& c = columns[p];
    tot.bottom = std::min(tot.bottom, c.bottom + static_cast<int>(p));
    tot.top = std::min(tot.top, c.top + static_cast<int>(p));
    for (auto& [k, b] : c.basis) {
      BlockKey tk{k.q + static_cast<int>(p), k.w};
      auto& tb = tot.basis[tk];
      offset[{static_cast<int>(p), k.q, k.w}] = tb.size();
      for (auto lab : b) tb.push_back((static_cast<std::uint64_t>(p) << 56) | lab);
    }
  }
  std::vector<const Complex*> cols;
  for (auto& c : columns) cols.push_back(&c);
  tot.describe = [cols](int t, std::uint64_t lab) {
    int p = static_cast<int>(lab >> 56);
    std::uint64_t inner = lab & ((1ull << 56) - 1);
    const Complex* c = cols.at(p);
    std::string s = c->describe ? c->describe(t - p, inner) : std::to_string(inner);
    return "[col " + std::to_string(p) + "] " + s;
  };
  std::map<BlockKey, std::vector<SparseMatrix::Triplet>> trip;
  for (std::size_t p = 0; p < columns.size(); ++p) {
    const Complex& c = columns[p];
    const std::int64_t sign = (p % 2 == 0) ? 1 : -1;
    for (auto& [k, m] : c.d) {
      BlockKey tk{k.q + static_cast<int>(p), k.w};
      std::size_t co = offset[{static_cast<int>(p), k.q, k.w}];
      auto ro_it = offset.find({static_cast<int>(p), k.q - 1, k.w});
      if (ro_it == offset.end()) continue;
      for (auto& x : m.triplets())
        trip[tk].push_back({static_cast<std::uint32_t>(ro_it->second + x.row), static_cast<std::uint32_t>(co + x.col),
                            sign * x.value});
    }
    if (p == 0) continue;
    for (auto& [k, m] : connecting[p - 1]) {
      BlockKey tk{k.q + static_cast<int>(p), k.w};
      std::size_t co = offset[{static_cast<int>(p), k.q, k.w}];
      auto ro_it = offset.find({static_cast<int>(p) - 1, k.q, k.w});
      if (ro_it == offset.end()) continue;
      for (auto& x : m.triplets())
        trip[tk].push_back(
            {static_cast<std::uint32_t>(ro_it->second + x.row), static_cast<std::uint32_t>(co + x.col), x.value});
    }
  }
  for (auto& [tk, b] : tot.basis) {
    if (tk.q <= tot.bottom) continue;
    std::uint32_t rows = static_cast<std::uint32_t>(tot.dim(BlockKey{tk.q - 1, tk.w}));
    tot.d[tk] = SparseMatrix::from_triplets(rows, static_cast<std::uint32_t>(b.size()), std::move(trip[tk]), mod);
  }
  return tot;
}

std::map<BlockKey, long> poincare_coefficients(const HomologyTable& t, PoincareKind kind, unsigned p) {
  std::map<BlockKey, long> out;
  for (auto& [k, h] : t.entries) {
    if (kind == PoincareKind::free_rank) {
      out[k] = static_cast<long>(h.free_rank);
    } else {
      long n = 0;
      for (auto& f : h.torsion)
        if (mpz_divisible_ui_p(f.get_mpz_t(), p)) ++n;
      out[k] = n;
    }
  }
  return out;
}

std::vector<long> poincare_by_degree(const HomologyTable& t, PoincareKind kind, unsigned p, int q_lo, int q_hi) {
  std::vector<long> out(q_hi >= q_lo ? q_hi - q_lo + 1 : 0, 0);
  for (auto& [k, v] : poincare_coefficients(t, kind, p))
    if (k.q >= q_lo && k.q <= q_hi) out[k.q - q_lo] += v;
  return out;
}

}  // namespace tlh
