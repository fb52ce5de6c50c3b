#pragma once

#include <map>
#include <vector>

#include "tlhom/barcx.hpp"

namespace tlh {

struct LoopsSpec {
  int two_n = 2;
  int two_i = 0;
  Ring ring;
  int q_max = 4;
  bool normalized = false;
  bool weighted = false;
};

/** L(0,2n,2i) truncated at q_max; L(2n) when two_i == 0. */
Complex build_loops_complex(const LoopsSpec& spec);

/**
 * A pinned loop system (D_0 | ... | D_q). Degree 0 is a single TL(0,2i)
 * diagram, otherwise D_0 in TL(0,2n), D_1..D_{q-1} in TL_{2n}, D_q in TL(2n,2i).
 */
using Pinned = std::vector<Diagram>;

inline int pinned_degree(const Pinned& p) { return static_cast<int>(p.size()) - 1; }

/** Pinned basis element with index `idx` in degree q of the unreduced complex. */
Pinned pinned_basis(int two_n, int two_i, int q, std::uint64_t idx);
std::uint64_t pinned_count(int two_n, int two_i, int q);

class LoopsElement {
 public:
  LoopsElement(int two_n, int two_i, Ring ring) : two_n_(two_n), two_i_(two_i), ring_(ring) {}
  static LoopsElement basis(int two_n, int two_i, Ring ring, Pinned p, std::int64_t coef = 1);
  /** The unit: empty diagram in degree 0 of L(2n). */
  static LoopsElement unit(int two_n, Ring ring);

  int two_n() const { return two_n_; }
  int two_i() const { return two_i_; }
  const Ring& ring() const { return ring_; }
  const std::map<Pinned, std::int64_t>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add(const Pinned& p, std::int64_t coef);
  LoopsElement& operator+=(const LoopsElement& o);
  LoopsElement operator-() const;
  LoopsElement scaled(std::int64_t c) const;
  bool operator==(const LoopsElement& o) const { return terms_ == o.terms_; }
  std::string str() const;

 private:
  int two_n_, two_i_;
  Ring ring_;
  std::map<Pinned, std::int64_t> terms_;
};

LoopsElement loops_d(const LoopsElement& x);

/** Juxtaposition x*y with x in L(2n) and y in L(0,2n,2i). */
LoopsElement loops_multiply(const LoopsElement& x, const LoopsElement& y);

/** Phi = Phi_l (x) Phi_r in degree 1. */
LoopsElement phi(int two_n, Ring ring);

/** Loops formed by D_0 D_1 ... (D_q L_max). */
int loops_weight(const Pinned& p, int two_i);

/** (D_0 | D_1 | ... | D_q) -> (D_0 R_1 | L_2 D_1 R_1 | ... | L_2 D_q). */
Pinned hook(const Pinned& p, int two_n);
LoopsElement hook(const LoopsElement& x);

/**
 * Componentwise reflection. left_right also reverses the tuple and carries
 * the sign (-1)^{q(q-1)/2}, which makes it commute with d; it needs two_i == 0.
 */
LoopsElement involution(const LoopsElement& x, Axis axis);

}  // namespace tlh
