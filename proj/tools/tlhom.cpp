#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "tlhom/cache.hpp"
#include "tlhom/cupcx.hpp"
#include "tlhom/loops.hpp"
#include "tlhom/model.hpp"
#include "tlhom/serialize.hpp"
#include "tlhom/series.hpp"
#include "tlhom/torext.hpp"

using namespace tlh;

namespace {

enum Exit { kPass = 0, kCheckFailed = 1, kInvalid = 2, kInternal = 3 };

struct Job {
  std::string complex = "loops";
  int n = 2;
  int i = 0;
  std::string ring = "Z";
  std::int64_t param = 0;
  int q_max = -1;
  std::string weights;
  bool normalized = false;
  std::string format = "aligned";
  std::string cache_dir;

  Ring parsed_ring() const { return Ring::parse(ring, param); }
};

std::string join(const std::vector<long>& v) {
  std::ostringstream os;
  os << '[';
  for (std::size_t k = 0; k < v.size(); ++k) os << (k ? "," : "") << v[k];
  os << ']';
  return os.str();
}

void emit(const HomologyTable& t, const std::string& format) {
  if (format == "csv")
    std::cout << t.csv();
  else if (format == "json")
    std::cout << t.json() << "\n";
  else
    std::cout << t.aligned();
}

HomologyTable apply_weight_filter(const HomologyTable& t, const std::string& weights) {
  if (weights.empty() || weights == "all") return t.collapsed();
  if (weights == "each") return t;
  try {
    return t.only_weight(std::stoi(weights));
  } catch (const std::logic_error&) {
    throw InvalidInput("--weights takes all, each or an integer weight");
  }
}

int need_even(int two_n, const char* what) {
  if (two_n < 0 || two_n % 2) throw InvalidInput(std::string(what) + " must be even and non-negative");
  return two_n;
}

// ---------------------------------------------------------------- homology

HomologyTable model_table(int two_n, const Ring& ring, int d_max) {
  need_even(two_n, "--n");
  auto wc = build_model_complex(two_n / 2, ring, d_max + 1);
  return homology_table(wc.complex, d_max);
}

int run_homology(const Job& job) {
  const Ring ring = job.parsed_ring();
  const bool wants_weights = !job.weights.empty();
  if (wants_weights && !ring.graded())
    throw InvalidInput("weight blocking needs parameter a = 0 in " + ring.name() + " (got a = " +
                       std::to_string(job.param) + ")");
  HomologyTable t;
  if (job.complex == "loops") {
    LoopsSpec s;
    s.two_n = need_even(job.n, "--n");
    s.two_i = need_even(job.i, "--i");
    s.ring = ring;
    s.q_max = (job.q_max < 0 ? 4 : job.q_max) + 1;
    s.normalized = job.normalized;
    s.weighted = ring.graded();
    t = homology_table(build_loops_complex(s), s.q_max - 1);
  } else if (job.complex == "model") {
    t = model_table(job.n, ring, job.q_max < 0 ? 10 : job.q_max);
  } else if (job.complex == "inn") {
    auto c = build_inn_complex(need_even(job.n, "--n"), need_even(job.i, "--i"), true, ring);
    t = homology_table(c, c.top);
  } else if (job.complex == "out") {
    auto c = build_out_complex(need_even(job.n, "--n"), ring);
    t = homology_table(c, c.top);
  } else if (job.complex == "dout") {
    const int q = job.q_max < 0 ? 3 : job.q_max;
    t = homology_table(build_dout_total(need_even(job.n, "--n"), ring, q + 1, false, true), q);
  } else if (job.complex == "dinn") {
    const int q = job.q_max < 0 ? 3 : job.q_max;
    DerivedSpec s;
    s.kind = DerivedKind::inn;
    s.two_n = need_even(job.n, "--n");
    s.two_i = need_even(job.i, "--i");
    s.ring = ring;
    s.q_max = q + 1;
    t = homology_table(build_derived(s).complex, q);
  } else if (job.complex == "bockstein") {
    const int q = job.q_max < 0 ? 7 : job.q_max;
    t = homology_table(bockstein_complex_2n4(q + 1).complex, q);
  } else {
    throw InvalidInput("unknown complex: " + job.complex + " (loops, model, inn, out, dinn, dout, bockstein)");
  }
  emit(apply_weight_filter(t, job.weights), job.format);
  return kPass;
}

// ---------------------------------------------------------------- verification suites

struct Check {
  std::string name;
  std::string source;
  std::string expected;
  std::string computed;
  bool pass = false;
};

struct Suite {
  std::string name;
  std::vector<Check> checks;

  void add(std::string n, std::string src, std::string exp, std::string got) {
    const bool ok = exp == got;
    checks.push_back({std::move(n), std::move(src), std::move(exp), std::move(got), ok});
  }
  bool passed() const {
    for (auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

std::vector<long> free_by_degree(const HomologyTable& t, int lo, int hi) {
  return poincare_by_degree(t, PoincareKind::free_rank, 0, lo, hi);
}

std::vector<long> torsion_count_by_degree(const HomologyTable& t, int lo, int hi) {
  std::vector<long> v;
  for (int q = lo; q <= hi; ++q) v.push_back(static_cast<long>(t.total(q).torsion.size()));
  return v;
}

std::string degrees_where(const HomologyTable& t, int hi, const std::function<bool(const HomologySummary&)>& pred) {
  std::vector<long> v;
  for (int q = 0; q <= hi; ++q)
    if (pred(t.total(q))) v.push_back(q);
  return join(v);
}

std::string summaries(const HomologyTable& t, int lo, int hi) {
  std::string s;
  for (int q = lo; q <= hi; ++q) s += (q > lo ? ", " : "") + t.total(q).str();
  return s;
}

bool is_boundary_over_Q(const ModelElement& x, int n) {
  auto bd = x.bidegree();
  if (!bd) return x.is_zero();
  auto src = model_basis(n, bd->first + 1, bd->second);
  auto dst = model_basis(n, bd->first, bd->second);
  std::map<Word, std::uint32_t> row;
  for (std::uint32_t k = 0; k < dst.size(); ++k) row[dst[k]] = k;
  std::vector<std::vector<std::int64_t>> dense(dst.size(), std::vector<std::int64_t>(src.size() + 1, 0));
  for (std::size_t c = 0; c < src.size(); ++c) {
    const auto img = model_d(ModelElement::word(Ring::Z(), src[c]), n);
    for (auto& [w, v] : img.terms()) dense[row[w]][c] = v.get_num().get_si();
  }
  mpz_class den = 1;
  for (auto& [w, v] : x.terms()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den_mpz_t());
  for (auto& [w, v] : x.terms()) dense[row[w]][src.size()] = mpq_class(v * den).get_num().get_si();
  auto with = SparseMatrix::from_dense(dense);
  for (auto& r : dense) r.pop_back();
  return rank_over_Q(with) == rank_over_Q(SparseMatrix::from_dense(dense));
}

Suite suite_cor12b() {
  Suite s{"cor12b", {}};
  auto t = model_table(2, Ring::Z(), 12);
  s.add("H_q(M(2;Z,0)), q <= 12", "M(2;Z,0) has homology Z in every degree", std::string(13, '1'),
        [&] {
          std::string r;
          for (int q = 0; q <= 12; ++q) r += t.total(q) == HomologySummary{1, {}, true} ? '1' : '0';
          return r;
        }());
  return s;
}

Suite suite_cor12c() {
  Suite s{"cor12c", {}};
  auto nonzero = [](const HomologySummary& h) { return !h.is_zero(); };
  auto rank1 = [](const HomologySummary& h) { return h.free_rank == 1; };
  auto t4 = model_table(4, Ring::Q(), 9);
  s.add("H(M(4;Q,0)) support, d <= 9", "rank one exactly at 0,1 and 2n k, 2n k+1", "[0,1,4,5,8,9]",
        degrees_where(t4, 9, nonzero));
  s.add("H(M(4;Q,0)) ranks", "rank one on the support", "[0,1,4,5,8,9]", degrees_where(t4, 9, rank1));
  auto t6 = model_table(6, Ring::Q(), 9);
  s.add("H(M(6;Q,0)) support, d <= 9", "rank one exactly at 0,1,6,7", "[0,1,6,7]", degrees_where(t6, 9, nonzero));
  std::string bideg;
  for (auto& [k, h] : t6.entries)
    if (k.q >= 2 && !h.is_zero()) bideg += "(" + std::to_string(k.q) + "," + std::to_string(k.w) + ")";
  s.add("H(M(6;Q,0)) bidegrees above 1", "alpha has bidegree (2n, n+1)", "(6,4)(7,5)", bideg);
  auto m3 = massey_power(2, Ring::Q(), 3);
  s.add("<Phi,Phi,Phi> over Q, 2n=4", "triple Massey power of Phi", "1/2*x1x3 + 1/2*x3x1",
        m3.defined ? m3.value.str() : m3.report);
  auto m4 = massey_power(3, Ring::Q(), 4);
  ModelElement full(Ring::Q());
  const int fact[] = {1, 1, 2, 6};
  for (int j = 1; j < 4; ++j) full.add({2 * j - 1, 2 * (4 - j) - 1}, mpq_class(1, fact[j] * fact[4 - j]));
  s.add("<Phi,Phi,Phi,Phi> over Q, 2n=6", "sum over j+k=4 of x_{2j-1} x_{2k-1} / (j! k!)", full.str(),
        m4.defined ? m4.value.str() : m4.report);
  return s;
}

Suite suite_cor12d() {
  Suite s{"cor12d", {}};
  auto is3 = [](const HomologySummary& h) { return h.free_rank == 0 && h.torsion == std::vector<mpz_class>{3}; };
  auto is5 = [](const HomologySummary& h) { return h.free_rank == 0 && h.torsion == std::vector<mpz_class>{5}; };
  auto nonzero = [](const HomologySummary& h) { return !h.is_zero(); };
  auto t4 = model_table(4, Ring::Z(3), 9);
  s.add("H(M(4;Z,3)) = Z/3 degrees", "Z/3[alpha], |alpha| = 4", "[0,4,8]", degrees_where(t4, 9, is3));
  s.add("H(M(4;Z,3)) support", "zero elsewhere", "[0,4,8]", degrees_where(t4, 9, nonzero));
  auto t6 = model_table(6, Ring::Z(5), 7);
  s.add("H(M(6;Z,5)) = Z/5 degrees", "Z/5[alpha], |alpha| = 6", "[0,6]", degrees_where(t6, 7, is5));
  s.add("H(M(6;Z,5)) support", "zero elsewhere", "[0,6]", degrees_where(t6, 7, nonzero));
  return s;
}

Suite suite_cor12e() {
  Suite s{"cor12e", {}};
  auto t = model_table(4, Ring::Z(), 10);
  s.add("free ranks of H_d(M(4;Z,0)), d <= 10", "(1+t)/(1-t^4)", join(series("free-2n4", 10)),
        join(free_by_degree(t, 0, 10)));
  s.add("torsion ranks of H_d(M(4;Z,0)), d <= 10", "t^2/((1-t-t^3)(1-t^4))", join(series("torsion-2n4", 10)),
        join(torsion_count_by_degree(t, 0, 10)));
  bool all2 = true;
  for (auto& [k, h] : t.entries)
    for (auto& f : h.torsion) all2 = all2 && f == 2;
  s.add("torsion is simple", "every invariant factor equals 2", "true", all2 ? "true" : "false");
  std::string fr, ex;
  for (auto& [k, c] : bigraded_series("free-2n4", 10)) ex += "(" + std::to_string(k.first) + "," + std::to_string(k.second) + ")";
  for (auto& [k, h] : t.entries)
    if (h.free_rank) fr += "(" + std::to_string(k.q) + "," + std::to_string(k.w) + ")";
  s.add("free bidegrees", "(1+ts)/(1-t^4 s^3)", ex, fr);
  auto t2 = model_table(4, Ring::Fp(2), 8);
  s.add("dim H_d(M(4;F_2,0)), d <= 8", "1/(1-t-t^3)", join(series("model-dims-2n4", 8)),
        join(free_by_degree(t2, 0, 8)));
  DefiningSystem sys;
  const Ring z = Ring::Z();
  sys.emplace(std::make_pair(0, 1), ModelElement::generator(z, 1));
  sys.emplace(std::make_pair(1, 2), ModelElement::generator(z, 1, 2));
  sys.emplace(std::make_pair(2, 3), ModelElement::generator(z, 1));
  sys.emplace(std::make_pair(0, 2), ModelElement::generator(z, 3));
  sys.emplace(std::make_pair(1, 3), ModelElement::generator(z, 3));
  auto g = massey_general(2, 3, sys);
  s.add("gamma = <Phi,2Phi,Phi>", "x1x3 + x3x1", "x1x3 + x3x1", g.defined ? g.value.str() : g.report);
  const bool cycle = g.defined && model_d(g.value, 2).is_zero();
  s.add("gamma is a cycle", "d(gamma) = 0", "true", cycle ? "true" : "false");
  s.add("gamma is not a boundary", "nonzero class in H_4", "true",
        g.defined && !is_boundary_over_Q(g.value, 2) ? "true" : "false");
  return s;
}

Suite suite_tor() {
  Suite s{"tor", {}};
  TorSpec spec;
  spec.two_n = 4;
  spec.ring = Ring::Z();
  spec.q_max = 4;
  spec.normalized = true;
  auto t = tor_table(spec);
  s.add("Tor_q over TL_4(Z,0), q <= 4", "(1+t^3)/(1-t^4) with free groups", "Z^1, 0, 0, Z^1, Z^1", summaries(t, 0, 4));
  auto r = tor_by_resolution(4, Ring::Fp(2), 5);
  s.add("dim Tor_5 over TL_4(F_2,0)", "Tor_5 = H_2(L(4;F_2,0)) = F_2", "1", std::to_string(r.tor_dims[5]));
  spec.ring = Ring::Z(1);
  spec.q_max = 3;
  auto t1 = tor_table(spec);
  s.add("Tor_q over TL_4(Z,1), 1 <= q <= 3", "invertible parameter kills Tor", "0, 0, 0", summaries(t1, 1, 3));
  return s;
}

Suite suite_cups() {
  Suite s{"cups", {}};
  std::string bad;
  for (int two_n = 0; two_n <= 8; two_n += 2)
    for (int two_i = 0; two_i <= two_n; two_i += 2) {
      auto c = build_inn_complex(two_n, two_i, true);
      auto t = homology_table(c, c.top);
      for (auto& [k, h] : t.entries)
        if (!h.is_zero()) bad += "(" + std::to_string(two_n) + "," + std::to_string(two_i) + ") ";
    }
  s.add("Inn^aug(2n,2i) acyclic, 2n <= 8", "augmented innermost cup complexes", "none", bad.empty() ? "none" : bad);
  bad.clear();
  for (int two_n = 2; two_n <= 8; two_n += 2) {
    auto c = build_out_complex(two_n);
    auto t = homology_table(c, c.top);
    for (auto& [k, h] : t.entries)
      if (!h.is_zero()) bad += std::to_string(two_n) + " ";
  }
  s.add("Out(2n) acyclic, 2n <= 8", "outermost cup complexes", "none", bad.empty() ? "none" : bad);
  return s;
}

std::map<std::string, std::function<Suite()>> suites() {
  return {{"cor12b", suite_cor12b}, {"cor12c", suite_cor12c}, {"cor12d", suite_cor12d},
          {"cor12e", suite_cor12e}, {"tor", suite_tor},       {"cups", suite_cups}};
}

void emit_suite(const Suite& s, const std::string& format) {
  if (format == "json") {
    nlohmann::json j;
    j["suite"] = s.name;
    j["pass"] = s.passed();
    for (auto& c : s.checks)
      j["checks"].push_back(
          {{"name", c.name}, {"source", c.source}, {"expected", c.expected}, {"computed", c.computed}, {"pass", c.pass}});
    std::cout << j.dump(2) << "\n";
    return;
  }
  if (format == "csv") {
    std::cout << "suite,check,pass,expected,computed,source\n";
    for (auto& c : s.checks)
      std::cout << s.name << ",\"" << c.name << "\"," << (c.pass ? "PASS" : "FAIL") << ",\"" << c.expected << "\",\""
                << c.computed << "\",\"" << c.source << "\"\n";
    return;
  }
  for (auto& c : s.checks) {
    std::cout << (c.pass ? "PASS " : "FAIL ") << s.name << ": " << c.name << "\n"
              << "     source:   " << c.source << "\n"
              << "     expected: " << c.expected << "\n"
              << "     computed: " << c.computed << "\n";
  }
  std::cout << s.name << ": " << (s.passed() ? "PASS" : "FAIL") << "\n";
}

// ---------------------------------------------------------------- acyclicity

int run_acyclicity(const Job& job, const std::string& which, int p) {
  const Ring ring = job.parsed_ring();
  Complex c;
  int hi = 0;
  if (which == "inn") {
    c = build_inn_complex(need_even(job.n, "--n"), need_even(job.i, "--i"), true, ring);
    hi = c.top;
  } else if (which == "out") {
    c = build_out_complex(need_even(job.n, "--n"), ring);
    hi = c.top;
  } else if (which == "dinn") {
    DerivedSpec s;
    s.kind = DerivedKind::inn;
    s.two_n = need_even(job.n, "--n");
    s.two_i = need_even(job.i, "--i");
    s.p = p;
    s.ring = ring;
    hi = job.q_max < 0 ? 3 : job.q_max;
    s.q_max = hi + 1;
    if (p >= s.two_i / 2) throw InvalidInput("DInn_p is only acyclic for p < i");
    c = build_derived(s).complex;
  } else if (which == "dout") {
    hi = job.q_max < 0 ? 3 : job.q_max;
    c = build_dout_total(need_even(job.n, "--n"), ring, hi + 1, false, true);
  } else {
    throw InvalidInput("unknown --which: " + which + " (inn, out, dinn, dout)");
  }
  auto t = homology_table(c, hi).collapsed();
  bool ok = true;
  std::cout << "# " << c.id << " over " << ring.name() << "\n";
  std::cout << std::setw(4) << "q" << std::setw(10) << "dim" << "  homology\n";
  for (auto& [k, h] : t.entries) {
    std::cout << std::setw(4) << k.q << std::setw(10) << c.dim(k.q) << "  " << h.str() << "\n";
    ok = ok && h.is_zero();
  }
  std::cout << "certificate: " << (ok ? "PASS acyclic through degree " + std::to_string(hi) : std::string("FAIL"))
            << "\n";
  return ok ? kPass : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Temperley-Lieb diagram calculus, planar loops and their homology"};
  app.require_subcommand(1);
  Job job;
  app.add_option("--cache-dir", job.cache_dir, "cache directory (overrides TLHOM_CACHE_DIR)");

  auto add_common = [&](CLI::App* sc, bool with_i) {
    sc->add_option("--n", job.n, "number of strands 2n");
    if (with_i) sc->add_option("--i", job.i, "right boundary 2i");
    sc->add_option("--ring", job.ring, "Z, Q, F<p>")->capture_default_str();
    sc->add_option("--param", job.param, "loop parameter a")->capture_default_str();
    sc->add_option("--max-degree", job.q_max, "largest homological degree");
    sc->add_option("--format", job.format, "aligned, csv or json")
        ->check(CLI::IsMember({"aligned", "csv", "json"}))
        ->capture_default_str();
  };

  auto* hom = app.add_subcommand("homology", "homology table of a complex");
  hom->add_option("--complex", job.complex, "loops, model, inn, out, dinn, dout, bockstein")->capture_default_str();
  add_common(hom, true);
  hom->add_option("--weights", job.weights, "all (summed), each, or a single weight");
  hom->add_flag("--normalized", job.normalized, "normalized bar construction");

  auto* massey = app.add_subcommand("massey", "Massey power <Phi,...,Phi> in the model");
  int arity = 3;
  add_common(massey, false);
  massey->add_option("--arity", arity, "number of entries")->capture_default_str();

  auto* bock = app.add_subcommand("bockstein", "Bockstein homology of M(4;F_2,0)");
  add_common(bock, false);

  auto* tor = app.add_subcommand("tor", "Tor over TL_{2n}(R,a)");
  add_common(tor, false);
  bool cell = false;
  std::string route = "bar";
  tor->add_flag("--normalized", job.normalized, "normalized bar construction");
  tor->add_flag("--cell-coefficients", cell, "right coefficients S(2n,0)");
  tor->add_option("--route", route, "bar or resolution (prime fields)")
      ->check(CLI::IsMember({"bar", "resolution"}))
      ->capture_default_str();

  auto* ext = app.add_subcommand("ext", "Ext over R[y]/(y^{n+1})");
  add_common(ext, false);

  auto* acyc = app.add_subcommand("acyclicity", "acyclicity certificate for a cup complex");
  std::string which = "inn";
  int column = 0;
  acyc->add_option("--which", which, "inn, out, dinn, dout")->capture_default_str();
  acyc->add_option("--p", column, "DInn column")->capture_default_str();
  add_common(acyc, true);

  auto* comp = app.add_subcommand("compose", "compose two diagrams");
  std::string lhs, rhs;
  comp->add_option("--lhs", lhs, "left diagram file")->required();
  comp->add_option("--rhs", rhs, "right diagram file")->required();
  comp->add_option("--format", job.format, "aligned or json");

  auto* ver = app.add_subcommand("verify", "run a verification suite");
  std::string suite_name = "cor12e";
  ver->add_option("--suite", suite_name, "cor12b, cor12c, cor12d, cor12e, tor, cups, all")->capture_default_str();
  ver->add_option("--format", job.format, "aligned, csv or json");

  auto* ser = app.add_subcommand("series", "expand a closed-form series");
  std::string series_name;
  int order = 10;
  ser->add_option("--which", series_name, "torsion-2n4, free-2n4, model-dims-2n4, tor-ranks-2n4")->required();
  ser->add_option("--order", order, "last exponent")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kPass : kInvalid;
  }

  try {
    if (!job.cache_dir.empty()) ::setenv(cache::kEnvVar, job.cache_dir.c_str(), 1);
    if (*hom) return run_homology(job);
    if (*massey) {
      need_even(job.n, "--n");
      auto r = massey_power(job.n / 2, job.parsed_ring(), arity);
      if (!r.defined) {
        std::cout << "undefined: " << r.report << "\n";
        return kCheckFailed;
      }
      auto bd = r.value.bidegree();
      std::cout << "value: " << r.value.str() << "\n";
      if (bd) std::cout << "bidegree: (" << bd->first << "," << bd->second << ")\n";
      std::cout << "cycle: " << (model_d(r.value, job.n / 2).is_zero() ? "yes" : "no") << "\n";
      std::cout << "unique: " << (r.unique ? "yes" : "no") << "\n";
      return kPass;
    }
    if (*bock) {
      if (job.n != 4) throw InvalidInput("the Bockstein derivation is implemented for 2n = 4");
      const int q = job.q_max < 0 ? 7 : job.q_max;
      emit(homology_table(bockstein_complex_2n4(q + 1).complex, q).collapsed(), job.format);
      return kPass;
    }
    if (*tor) {
      const Ring ring = job.parsed_ring();
      const int q = job.q_max < 0 ? 4 : job.q_max;
      if (route == "resolution") {
        if (cell) throw InvalidInput("the resolution route computes Tor(R,R) only");
        auto r = tor_by_resolution(need_even(job.n, "--n"), ring, q);
        HomologyTable t;
        t.id = "Tor^TL_" + std::to_string(job.n) + "(R,R) by resolution";
        t.ring = ring;
        t.q_max = q;
        for (int k = 0; k <= q; ++k) t.entries[{k, kAllWeights}] = HomologySummary{r.tor_dims[k], {}, true};
        emit(t, job.format);
        return kPass;
      }
      TorSpec s;
      s.two_n = need_even(job.n, "--n");
      s.ring = ring;
      s.q_max = q;
      s.normalized = job.normalized;
      emit(cell ? tor_with_cell(s) : tor_table(s), job.format);
      return kPass;
    }
    if (*ext) {
      const Ring ring = job.parsed_ring();
      auto e = ext_table_truncated_poly(job.n, ring, job.q_max < 0 ? 9 : job.q_max);
      if (job.format == "json") {
        nlohmann::json j = nlohmann::json::array();
        for (auto& x : e) j.push_back({{"s", x.s}, {"d", x.d}, {"w", x.w}, {"rank", 1}});
        std::cout << j.dump(2) << "\n";
      } else if (job.format == "csv") {
        std::cout << "s,d,w,rank\n";
        for (auto& x : e) std::cout << x.s << ',' << x.d << ',' << x.w << ",1\n";
      } else {
        std::cout << "# Ext over " << ring.name() << "[y]/(y^" << job.n + 1 << ")\n";
        std::cout << std::setw(4) << "s" << std::setw(6) << "d" << std::setw(6) << "w" << "  rank\n";
        for (auto& x : e) std::cout << std::setw(4) << x.s << std::setw(6) << x.d << std::setw(6) << x.w << "  1\n";
      }
      return kPass;
    }
    if (*acyc) return run_acyclicity(job, which, column);
    if (*comp) {
      auto a = read_diagram_file(lhs);
      auto b = read_diagram_file(rhs);
      auto r = compose(a, b);
      if (job.format == "json")
        std::cout << "{\"loops\": " << r.loops << ", \"diagram\": " << diagram_to_json(r.diagram) << "}\n";
      else
        std::cout << "loops=" << r.loops << "\n" << "diagram=" << r.diagram.str() << "\n";
      return kPass;
    }
    if (*ver) {
      auto all = suites();
      std::vector<std::string> names;
      if (suite_name == "all")
        for (auto& [k, v] : all) names.push_back(k);
      else if (all.count(suite_name))
        names.push_back(suite_name);
      else
        throw InvalidInput("unknown suite: " + suite_name);
      bool ok = true;
      for (auto& nm : names) {
        auto s = all[nm]();
        emit_suite(s, job.format);
        ok = ok && s.passed();
      }
      return ok ? kPass : kCheckFailed;
    }
    if (*ser) {
      auto v = series(series_name, order);
      std::cout << series_name << ": " << join(v) << "\n";
      return kPass;
    }
  } catch (const InvalidInput& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kInvalid;
  } catch (const InternalInconsistency& e) {
    std::cerr << "internal inconsistency: " << e.what() << "\n";
    return kInternal;
  }
  return kInvalid;
}
