#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace tlh {

struct InvalidInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Side : std::uint8_t { L, R };

struct Node {
  Side side;
  int index;  // 1-based, bottom to top
  bool operator==(const Node&) const = default;
};

using Arc = std::pair<Node, Node>;

/**
 * A Temperley-Lieb (m,n)-diagram stored as a perfect matching on the
 * circularly ordered boundary: left nodes 1..m, then right nodes n..1.
 * The partner array is the canonical form.
 */
class Diagram {
 public:
  Diagram() = default;

  static Diagram from_arcs(int m, int n, const std::vector<Arc>& arcs);
  static Diagram from_partner(int m, int n, std::vector<std::uint8_t> partner);

  int left() const { return m_; }
  int right() const { return n_; }
  int size() const { return m_ + n_; }
  const std::vector<std::uint8_t>& partner() const { return partner_; }

  int position(Node v) const;
  Node node(int pos) const;
  Node mate(Node v) const { return node(partner_[position(v)]); }

  // arcs sorted by least circular position, each written (lower pos, higher pos)
  std::vector<Arc> arcs() const;
  std::string key() const { return std::string(partner_.begin(), partner_.end()); }
  std::string str() const;

  bool is_identity() const;
  int left_cup_count() const;
  int right_cup_count() const;
  bool has_right_cup() const { return right_cup_count() > 0; }

  bool operator==(const Diagram& o) const {
    return m_ == o.m_ && n_ == o.n_ && partner_ == o.partner_;
  }
  std::strong_ordering operator<=>(const Diagram& o) const;

 private:
  int m_ = 0;
  int n_ = 0;
  std::vector<std::uint8_t> partner_;
};

bool is_planar_matching(const std::vector<std::uint8_t>& partner);

std::vector<Diagram> enumerate_diagrams(int m, int n);

struct CompositionResult {
  Diagram diagram;
  int loops = 0;
};

CompositionResult compose(const Diagram& d, const Diagram& e);

/**
 * Composition with bookkeeping of where each input arc ends up.
 * Arcs are named by their lower circular position in the input diagram.
 * For every such position, `d_arc_target` / `e_arc_target` holds the lower
 * position of the result arc containing it, or -1-k when it lies on loop k.
 */
struct TracedComposition {
  Diagram diagram;
  int loops = 0;
  std::vector<int> d_arc_target;
  std::vector<int> e_arc_target;
};

TracedComposition compose_traced(const Diagram& d, const Diagram& e);

enum class Axis { left_right, top_bottom };
Diagram reflect(const Diagram& d, Axis axis);

Diagram identity_diagram(int m);
Diagram L_k(int two_i, int k);          // TL(2i, 2i-2)
Diagram R_k(int two_i, int k);          // TL(2i-2, 2i)
Diagram L_max(int two_i);               // TL(2i, 0)
Diagram R_max(int two_i);               // TL(0, 2i)
Diagram Phi_l(int two_n);               // TL(0, 2n)
Diagram Phi_r_prime(int two_n);         // TL(2n, 2)
Diagram Phi_r(int two_n);               // TL(2n, 0)
Diagram C_open(int two_i, int j);       // TL(2, 2i): cups of R_max with the j-th cut open

/** Enumerated diagram set with index lookup. */
class DiagramSpace {
 public:
  DiagramSpace(int m, int n);
  int left() const { return m_; }
  int right() const { return n_; }
  std::size_t size() const { return items_.size(); }
  const Diagram& operator[](std::size_t i) const { return items_[i]; }
  const std::vector<Diagram>& items() const { return items_; }
  std::uint32_t index_of(const Diagram& d) const;
  int identity_index() const { return identity_; }

 private:
  int m_, n_;
  int identity_ = -1;
  std::vector<Diagram> items_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

std::shared_ptr<const DiagramSpace> diagram_space(int m, int n);

/** Precomputed products of all pairs from two spaces. */
class CompositionTable {
 public:
  CompositionTable(std::shared_ptr<const DiagramSpace> a, std::shared_ptr<const DiagramSpace> b);
  std::uint32_t result(std::size_t i, std::size_t j) const { return result_[i * nb_ + j]; }
  std::uint8_t loops(std::size_t i, std::size_t j) const { return loops_[i * nb_ + j]; }
  const DiagramSpace& target() const { return *c_; }

 private:
  std::shared_ptr<const DiagramSpace> a_, b_, c_;
  std::size_t nb_;
  std::vector<std::uint32_t> result_;
  std::vector<std::uint8_t> loops_;
};

std::shared_ptr<const CompositionTable> composition_table(int l, int m, int n);

std::uint64_t catalan(int k);

}  // namespace tlh
