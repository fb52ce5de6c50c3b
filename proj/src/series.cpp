#include "tlhom/series.hpp"

#include "tlhom/diagrams.hpp"

namespace tlh {

namespace {

std::vector<long> poly_mul(const std::vector<long>& a, const std::vector<long>& b) {
  std::vector<long> c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

// polynomials in t whose coefficients are polynomials in s, as (d,w) -> c
using Bipoly = std::map<std::pair<int, int>, long>;

Bipoly expand_bigraded(const Bipoly& num, const Bipoly& den_tail, int order) {
  // f = num + f * den_tail, with den = 1 - den_tail and den_tail of positive t-degree
  Bipoly f;
  for (int d = 0; d <= order; ++d) {
    for (auto& [k, c] : num)
      if (k.first == d) f[k] += c;
    for (auto& [k, c] : den_tail) {
      if (k.first > d) continue;
      for (auto& [fk, fc] : Bipoly(f))
        if (fk.first == d - k.first) f[{d, fk.second + k.second}] += c * fc;
    }
  }
  std::erase_if(f, [](const auto& e) { return e.second == 0; });
  return f;
}

}  // namespace

const std::vector<std::string>& series_names() {
  static const std::vector<std::string> names = {"torsion-2n4", "free-2n4", "model-dims-2n4", "tor-ranks-2n4"};
  return names;
}

std::vector<long> expand_rational(const std::vector<long>& num, const std::vector<long>& den, int order) {
  if (den.empty() || den[0] != 1) throw InvalidInput("denominator must have constant term 1");
  std::vector<long> f(order + 1, 0);
  for (int k = 0; k <= order; ++k) {
    long v = k < static_cast<int>(num.size()) ? num[k] : 0;
    for (int j = 1; j <= k && j < static_cast<int>(den.size()); ++j) v -= den[j] * f[k - j];
    f[k] = v;
  }
  return f;
}

std::vector<long> series(const std::string& which, int order) {
  if (order < 0) throw InvalidInput("series order must be non-negative");
  const std::vector<long> fib3 = {1, -1, 0, -1};
  const std::vector<long> per4 = {1, 0, 0, 0, -1};
  if (which == "torsion-2n4") return expand_rational({0, 0, 1}, poly_mul(fib3, per4), order);
  if (which == "free-2n4") return expand_rational({1, 1}, per4, order);
  if (which == "model-dims-2n4") return expand_rational({1}, fib3, order);
  if (which == "tor-ranks-2n4") return expand_rational({1, 0, 0, 1}, per4, order);
  throw InvalidInput("unknown series: " + which);
}

std::map<std::pair<int, int>, long> bigraded_series(const std::string& which, int order) {
  if (order < 0) throw InvalidInput("series order must be non-negative");
  if (which == "free-2n4") return expand_bigraded({{{0, 0}, 1}, {{1, 1}, 1}}, {{{4, 3}, 1}}, order);
  if (which == "model-dims-2n4") return expand_bigraded({{{0, 0}, 1}}, {{{1, 1}, 1}, {{3, 2}, 1}}, order);
  throw InvalidInput("no bigraded form for series: " + which);
}

}  // namespace tlh
