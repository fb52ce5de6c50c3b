#pragma once

#include <compare>
#include <map>
#include <optional>
#include <vector>

#include "tlhom/barcx.hpp"

namespace tlh {

/**
 * A diagram with distinguished arcs. Inn mode: `dashed` holds the lower
 * right index k of dashed innermost right cups (k, k+1). Out mode: the lower
 * left index of dashed outermost left cups. Both sorted bottom to top.
 */
struct DashedDiagram {
  Diagram base;
  std::vector<int> dashed;

  auto operator<=>(const DashedDiagram&) const = default;
  bool operator==(const DashedDiagram&) const = default;
  std::string str() const;
};

using DashedElement = std::map<DashedDiagram, std::int64_t>;
void add_term(DashedElement& e, const DashedDiagram& d, std::int64_t c);

/** Diagrams of TL(2n,2i) with no right cup. */
std::vector<Diagram> cell_basis(int two_n, int two_i);

/** Lower indices k of the innermost right cups (k, k+1). */
std::vector<int> innermost_right_cups(const Diagram& d);
/** Lower indices of the outermost left cups, for d in TL(2n,0). */
std::vector<int> outermost_left_cups(const Diagram& d);

/** Basis of Inn_q(2n,2i): diagrams in enumeration order, then dashed subsets in lexicographic order. */
std::vector<DashedDiagram> inn_basis(int two_n, int two_i, int q);
/** Basis of Out_q(2n). */
std::vector<DashedDiagram> out_basis(int two_n, int q);

/** sum_j (-1)^j (undash the j-th dashed arc). */
DashedElement undash_boundary(const DashedDiagram& d);
DashedElement undash_boundary(const DashedElement& x);

/** Inn_*(2n,2i), degrees 0..i; augmented adds S(2n,2i) in degree -1. Over `ring`, unweighted. */
Complex build_inn_complex(int two_n, int two_i, bool augmented, const Ring& ring = Ring::Z());
/** Out_*(2n), degrees 0..n; requires a = 0. */
Complex build_out_complex(int two_n, const Ring& ring = Ring::Z());

/** Deletes the dashed innermost right cups: Cup(F)(2n,2i) -> TL(2n, 2i-2|F|). */
Diagram forget_dashed_cups(const DashedDiagram& d);

/** D -> D * C_q with the cups of L_max dashed; empty when the result is zero in Out_q(2n). */
std::optional<DashedDiagram> close_all_cups(const Diagram& d);
/** Inverse of close_all_cups: the j-th dashed cup (a<b) is cut to right nodes 2j-1, 2j. */
Diagram cut_open(const DashedDiagram& d);

/** Left action T * (D, F) on Out_q(2n) with a = 0; empty when zero. */
std::optional<DashedDiagram> out_action(const Diagram& t, const DashedDiagram& d);

/** Submaximal dashed sets: every dashed cup starts at an odd node. */
bool is_submaximal(const DashedDiagram& d);
/** M_q(2n,2i) for q >= 1; q = 0 gives the diagrams having some right cup (2k+1, 2k+2). */
std::vector<DashedDiagram> submaximal_basis(int two_n, int two_i, int q);

/**
 * Lift of the k-th face (k 0-based, multiplication by L_{2k+1}) to
 * M_*(2n,2i) -> M_*(2n,2i-2), with a = 0.
 */
DashedElement lifted_face(int k, const DashedDiagram& d);
DashedElement lifted_face(int k, const DashedElement& x);
/** sum_k (-1)^k lifted_face(k, .) over k = 0..i-1. */
DashedElement lifted_boundary(const DashedElement& x, int two_i);

/** Checks lifted_face(k) o undash = undash o lifted_face(k) on all of M_{q>=1}(2n,2i); returns violations. */
std::vector<std::string> lifted_face_chain_check(int two_n, int two_i);

enum class DerivedKind { inn, cell, out };

struct DerivedSpec {
  DerivedKind kind = DerivedKind::inn;
  int two_n = 4;
  int two_i = 2;  // inn, cell
  int p = 0;      // dashed count: inn column p, out column q
  Ring ring;
  int q_max = 3;
  bool weighted = false;
};

struct DerivedComplex {
  Complex complex;
  BarSpec bar;
  std::vector<DashedDiagram> x_basis;  // X as dashed diagrams (dashed empty for cell)
  std::vector<DashedDiagram> y_basis;
};

DerivedComplex build_derived(const DerivedSpec& spec);

/** Chain map between derived complexes induced levelwise by maps on X and Y. */
ChainMap derived_map(const DerivedComplex& src, const DerivedComplex& dst,
                     const std::function<DashedElement(const DashedDiagram&)>& on_x,
                     const std::function<DashedElement(const DashedDiagram&)>& on_y);

/** Total complex of [DOut_0(2n) <- ... <- DOut_n(2n)]; with augmentation, R is prepended as column 0. */
Complex build_dout_total(int two_n, const Ring& ring, int q_max, bool weighted, bool augmented);
/** Total complex of [DS(2n,2i) <- DInn_0 <- ... <- DInn_i]. */
Complex build_dinn_total(int two_n, int two_i, const Ring& ring, int q_max, bool weighted);

struct IsoReport {
  bool ok = true;
  std::string detail;
};
/** Compares DInn_i(2n,2i) with L(2n) through x -> x * R_max(2i), all cups dashed; weight shifts by i. */
IsoReport dinn_top_isomorphism(int two_n, int two_i, int q_max);

struct WitnessReport {
  bool ok = false;
  std::int64_t coefficient = 0;
  std::string lift_check;  // empty when d(z) = delta(R^dashed)
  std::string lhs, rhs;
};
/** The lift z of delta(R^dashed_{[2i]}) and its image under the lifted boundary. */
WitnessReport lemma81_witness(int n, int i);

}  // namespace tlh
