#pragma once

#include <string>
#include <vector>

#include "tlhom/barcx.hpp"

namespace tlh {

struct TorSpec {
  int two_n = 4;
  Ring ring;
  int q_max = 4;
  bool normalized = false;
};

/** Bar(R, TL_{2n}, R) with both ends acting through eps(identity) = 1, eps(other) = 0. */
Complex build_tor_complex(const TorSpec& spec);
HomologyTable tor_table(const TorSpec& spec);

/** Bar(R, TL_{2n}, S(2n,0)). */
Complex build_tor_cell_complex(const TorSpec& spec);
HomologyTable tor_with_cell(const TorSpec& spec);

/** eps(D) eps(E) = a^loops eps(DE) on all pairs of TL_{2n}; returns the first failing pair or "". */
std::string augmentation_multiplicativity(int two_n, const Ring& ring);

/**
 * Tor^{TL_{2n}}_q(R,R) over a prime field from a free resolution of the
 * trivial module built degree by degree (kernels and greedy generators).
 */
struct ResolutionTor {
  std::vector<std::size_t> ranks;       // free ranks of the resolution
  std::vector<std::size_t> tor_dims;    // q = 0..q_max
};
ResolutionTor tor_by_resolution(int two_n, const Ring& field, int q_max);

struct ExtEntry {
  int s;  // resolution degree
  int d;
  int w;
  bool operator==(const ExtEntry&) const = default;
};

/** Bidegrees of Ext_{R[y]/(y^{n+1})}(R,R) with d <= d_max, from the periodic resolution. */
std::vector<ExtEntry> ext_table_truncated_poly(int n, const Ring& ring, int d_max);

/** R <- P_0 <- P_1 <- ... <- P_s_max as a complex of R-modules, augmentation in degree -1. */
Complex periodic_resolution(int n, const Ring& ring, int s_max);

}  // namespace tlh
