#pragma once

#include <functional>
#include <string>
#include <vector>

#include "tlhom/chaincore.hpp"
#include "tlhom/diagrams.hpp"

namespace tlh {

/** A basis-to-basis map with coefficient; coef == 0 means the image is zero. */
struct Term {
  std::int64_t coef = 0;
  std::uint32_t idx = 0;
};

/**
 * Right-hand coefficient module X of a two-sided bar complex over TL_{2n}:
 * a finite basis with a left action of TL_{2n} basis diagrams, and (for the
 * cup-ended complexes) the degree-0 map TL(0,2n) x X -> Y.
 */
struct BarModule {
  std::string name;
  std::size_t x_size = 0;
  std::size_t y_size = 0;
  std::vector<Term> act;          // [t * x_size + x]
  std::vector<Term> phi;          // [a0 * x_size + x]
  std::vector<int> close_weight;  // [a0 * x_size + x]
  std::vector<int> y_weight;      // [y]
  std::function<std::string(std::size_t)> x_name;
  std::function<std::string(std::size_t)> y_name;
};

/**
 * cup:          degree q >= 1 is TL(0,2n) (x) TL_{2n}^{q-1} (x) X, degree 0 is Y.
 * augmentation: degree q is TL_{2n}^{q} (x) X, the left end acting through eps.
 */
enum class LeftEnd { cup, augmentation };

struct BarSpec {
  int two_n = 2;
  Ring ring;
  LeftEnd left = LeftEnd::cup;
  bool normalized = false;
  bool weighted = false;
  int q_max = 0;
  BarModule module;
  std::string id;
};

/** Digits of a basis element: a0 (cup mode only), middle TL_{2n} factors, x. */
struct BarTuple {
  std::uint32_t a0 = 0;
  std::vector<std::uint32_t> mid;
  std::uint32_t x = 0;
  bool operator==(const BarTuple&) const = default;
};

class BarLayout {
 public:
  BarLayout(int two_n, LeftEnd left, bool normalized, std::size_t x_size);
  std::uint64_t count(int q) const;
  int middle_count(int q) const { return left_ == LeftEnd::cup ? q - 1 : q; }
  BarTuple decode(int q, std::uint64_t idx) const;
  /** Returns false when a middle factor is excluded by normalization. */
  bool encode(int q, const BarTuple& t, std::uint64_t& idx) const;
  std::size_t a0_size() const { return a0_; }
  std::size_t t_size() const { return t_; }
  std::size_t x_size() const { return x_; }

 private:
  LeftEnd left_;
  bool normalized_;
  std::size_t a0_, t_, x_;
  int identity_;
};

Complex build_bar_complex(const BarSpec& spec);

/** Module X = TL(2n,2i) acted on by composition, Y = TL(0,2i). */
BarModule diagram_module(int two_n, int two_i, const Ring& ring, bool weighted);

}  // namespace tlh
