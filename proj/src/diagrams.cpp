#include "tlhom/diagrams.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <tuple>

namespace tlh {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

std::vector<std::pair<int, int>> arc_positions(const std::vector<std::uint8_t>& partner) {
  std::vector<std::pair<int, int>> out;
  for (int p = 0; p < static_cast<int>(partner.size()); ++p)
    if (partner[p] > p) out.emplace_back(p, partner[p]);
  return out;
}

}  // namespace

bool is_planar_matching(const std::vector<std::uint8_t>& partner) {
  const int N = static_cast<int>(partner.size());
  std::vector<int> stack;
  for (int p = 0; p < N; ++p) {
    int q = partner[p];
    if (q >= N || q == p || partner[q] != p) return false;
    if (q > p) {
      stack.push_back(p);
    } else {
      if (stack.empty() || stack.back() != q) return false;
      stack.pop_back();
    }
  }
  return stack.empty();
}

int Diagram::position(Node v) const {
  if (v.side == Side::L) {
    if (v.index < 1 || v.index > m_) throw InvalidInput("left node index out of range");
    return v.index - 1;
  }
  if (v.index < 1 || v.index > n_) throw InvalidInput("right node index out of range");
  return m_ + (n_ - v.index);
}

Node Diagram::node(int pos) const {
  if (pos < m_) return {Side::L, pos + 1};
  return {Side::R, n_ - (pos - m_)};
}

Diagram Diagram::from_partner(int m, int n, std::vector<std::uint8_t> partner) {
  if (m < 0 || n < 0) throw InvalidInput("negative node count");
  if ((m + n) % 2 != 0) throw InvalidInput("odd number of boundary nodes");
  if (static_cast<int>(partner.size()) != m + n) throw InvalidInput("partner array has wrong length");
  if (!is_planar_matching(partner)) throw InvalidInput("matching is not a planar perfect matching");
  Diagram d;
  d.m_ = m;
  d.n_ = n;
  d.partner_ = std::move(partner);
  return d;
}

Diagram Diagram::from_arcs(int m, int n, const std::vector<Arc>& arcs) {
  if (m < 0 || n < 0) throw InvalidInput("negative node count");
  if ((m + n) % 2 != 0) throw InvalidInput("odd number of boundary nodes");
  if (static_cast<int>(arcs.size()) * 2 != m + n) throw InvalidInput("arc count must be (m+n)/2");
  Diagram shape;
  shape.m_ = m;
  shape.n_ = n;
  std::vector<int> partner(m + n, -1);
  for (const auto& [u, v] : arcs) {
    int p = shape.position(u), q = shape.position(v);
    if (p == q || partner[p] != -1 || partner[q] != -1)
      throw InvalidInput("every node must appear in exactly one arc");
    partner[p] = q;
    partner[q] = p;
  }
  return from_partner(m, n, std::vector<std::uint8_t>(partner.begin(), partner.end()));
}

std::vector<Arc> Diagram::arcs() const {
  std::vector<Arc> out;
  for (auto [p, q] : arc_positions(partner_)) out.emplace_back(node(p), node(q));
  return out;
}

std::string Diagram::str() const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (auto [u, v] : arcs()) {
    if (!first) os << ", ";
    first = false;
    if (u.side == v.side) {
      if (u.index > v.index) std::swap(u, v);
      os << (u.side == Side::L ? 'L' : 'R') << u.index << (v.side == Side::L ? 'L' : 'R') << v.index;
    } else {
      if (u.side == Side::R) std::swap(u, v);
      os << 'L' << u.index << "-R" << v.index;
    }
  }
  os << '}';
  return os.str();
}

bool Diagram::is_identity() const {
  if (m_ != n_) return false;
  for (int j = 1; j <= m_; ++j)
    if (partner_[j - 1] != position({Side::R, j})) return false;
  return true;
}

int Diagram::left_cup_count() const {
  int c = 0;
  for (int p = 0; p < m_; ++p)
    if (partner_[p] < m_ && partner_[p] > p) ++c;
  return c;
}

int Diagram::right_cup_count() const {
  int c = 0;
  for (int p = m_; p < m_ + n_; ++p)
    if (partner_[p] >= m_ && partner_[p] > p) ++c;
  return c;
}

std::strong_ordering Diagram::operator<=>(const Diagram& o) const {
  if (auto c = std::tie(m_, n_) <=> std::tie(o.m_, o.n_); c != 0) return c;
  auto a = arc_positions(partner_), b = arc_positions(o.partner_);
  return a <=> b;
}

std::vector<Diagram> enumerate_diagrams(int m, int n) {
  std::vector<Diagram> out;
  if (m < 0 || n < 0 || (m + n) % 2 != 0) return out;
  const int N = m + n;
  std::vector<std::uint8_t> partner(N);
  std::vector<int> stack;
  // Dyck words of length N, each close matched with the latest open
  auto rec = [&](auto&& self, int pos, int opens) -> void {
    if (pos == N) {
      out.push_back(Diagram::from_partner(m, n, partner));
      return;
    }
    if (opens < N / 2) {
      stack.push_back(pos);
      self(self, pos + 1, opens + 1);
      stack.pop_back();
    }
    if (!stack.empty()) {
      int q = stack.back();
      stack.pop_back();
      partner[pos] = static_cast<std::uint8_t>(q);
      partner[q] = static_cast<std::uint8_t>(pos);
      self(self, pos + 1, opens);
      stack.push_back(q);
    }
  };
  rec(rec, 0, 0);
  std::sort(out.begin(), out.end());
  return out;
}

TracedComposition compose_traced(const Diagram& d, const Diagram& e) {
  if (d.right() != e.left()) throw InvalidInput("composition size mismatch: right of first != left of second");
  const int l = d.left(), m = d.right(), n = e.right();
  const int total = l + m + n;
  auto d_id = [&](int p) { return p < l ? p : l + (m - (p - l)) - 1; };
  auto e_id = [&](int p) { return p < m ? l + p : l + m + (n - (p - m)) - 1; };
  UnionFind uf(total);
  for (int p = 0; p < d.size(); ++p)
    if (d.partner()[p] > p) uf.unite(d_id(p), d_id(d.partner()[p]));
  for (int p = 0; p < e.size(); ++p)
    if (e.partner()[p] > p) uf.unite(e_id(p), e_id(e.partner()[p]));

  // outer ids -> result positions
  auto result_pos = [&](int id) { return id < l ? id : l + (n - (id - l - m + 1)); };
  std::vector<int> first_outer(total, -1);
  std::vector<std::uint8_t> partner(l + n);
  for (int id = 0; id < total; ++id) {
    if (id >= l && id < l + m) continue;
    int r = uf.find(id);
    if (first_outer[r] < 0) {
      first_outer[r] = id;
    } else {
      int a = result_pos(first_outer[r]), b = result_pos(id);
      partner[a] = static_cast<std::uint8_t>(b);
      partner[b] = static_cast<std::uint8_t>(a);
    }
  }
  TracedComposition out;
  std::vector<int> loop_of(total, -1);
  for (int id = l; id < l + m; ++id) {
    int r = uf.find(id);
    if (first_outer[r] < 0 && loop_of[r] < 0) loop_of[r] = out.loops++;
  }
  out.diagram = Diagram::from_partner(l, n, std::move(partner));
  auto target = [&](int id) {
    int r = uf.find(id);
    if (first_outer[r] < 0) return -1 - loop_of[r];
    int a = result_pos(first_outer[r]);
    return std::min<int>(a, out.diagram.partner()[a]);
  };
  out.d_arc_target.assign(d.size(), 0);
  for (int p = 0; p < d.size(); ++p) out.d_arc_target[p] = target(d_id(p));
  out.e_arc_target.assign(e.size(), 0);
  for (int p = 0; p < e.size(); ++p) out.e_arc_target[p] = target(e_id(p));
  return out;
}

CompositionResult compose(const Diagram& d, const Diagram& e) {
  auto t = compose_traced(d, e);
  return {std::move(t.diagram), t.loops};
}

Diagram reflect(const Diagram& d, Axis axis) {
  std::vector<Arc> arcs = d.arcs();
  for (auto& [u, v] : arcs) {
    for (Node* x : {&u, &v}) {
      if (axis == Axis::left_right) {
        x->side = x->side == Side::L ? Side::R : Side::L;
      } else {
        x->index = (x->side == Side::L ? d.left() : d.right()) + 1 - x->index;
      }
    }
  }
  if (axis == Axis::left_right) return Diagram::from_arcs(d.right(), d.left(), arcs);
  return Diagram::from_arcs(d.left(), d.right(), arcs);
}

Diagram identity_diagram(int m) {
  std::vector<Arc> arcs;
  for (int j = 1; j <= m; ++j) arcs.push_back({{Side::L, j}, {Side::R, j}});
  return Diagram::from_arcs(m, m, arcs);
}

Diagram L_k(int two_i, int k) {
  if (two_i < 2 || two_i % 2 != 0) throw InvalidInput("L_k needs a positive even size");
  if (k < 1 || k > two_i - 1) throw InvalidInput("L_k index out of range");
  std::vector<Arc> arcs{{{Side::L, k}, {Side::L, k + 1}}};
  for (int j = 1; j <= two_i; ++j) {
    if (j == k || j == k + 1) continue;
    arcs.push_back({{Side::L, j}, {Side::R, j < k ? j : j - 2}});
  }
  return Diagram::from_arcs(two_i, two_i - 2, arcs);
}

Diagram R_k(int two_i, int k) { return reflect(L_k(two_i, k), Axis::left_right); }

Diagram L_max(int two_i) {
  if (two_i < 0 || two_i % 2 != 0) throw InvalidInput("L_max needs an even size");
  std::vector<Arc> arcs;
  for (int j = 1; j < two_i; j += 2) arcs.push_back({{Side::L, j}, {Side::L, j + 1}});
  return Diagram::from_arcs(two_i, 0, arcs);
}

Diagram R_max(int two_i) { return reflect(L_max(two_i), Axis::left_right); }

Diagram Phi_l(int two_n) {
  if (two_n < 2 || two_n % 2 != 0) throw InvalidInput("Phi_l needs a positive even size");
  std::vector<Arc> arcs;
  auto cup = [&](int a, int b) { arcs.push_back({{Side::R, a}, {Side::R, b}}); };
  int start = 1;
  if (two_n % 4 == 2) {
    cup(1, 2);
    start = 3;
  }
  for (int k = start; k + 3 <= two_n; k += 4) {
    cup(k, k + 3);
    cup(k + 1, k + 2);
  }
  return Diagram::from_arcs(0, two_n, arcs);
}

Diagram Phi_r_prime(int two_n) {
  if (two_n < 2 || two_n % 2 != 0) throw InvalidInput("Phi_r' needs a positive even size");
  std::vector<Arc> arcs{{{Side::L, two_n}, {Side::R, 2}}, {{Side::L, two_n - 1}, {Side::R, 1}}};
  auto cup = [&](int a, int b) { arcs.push_back({{Side::L, a}, {Side::L, b}}); };
  int top = two_n - 2;
  for (; top >= 4; top -= 4) {
    cup(top - 3, top);
    cup(top - 2, top - 1);
  }
  if (top == 2) cup(1, 2);
  return Diagram::from_arcs(two_n, 2, arcs);
}

Diagram Phi_r(int two_n) { return compose(Phi_r_prime(two_n), L_max(2)).diagram; }

Diagram C_open(int two_i, int j) {
  if (two_i < 2 || two_i % 2 != 0) throw InvalidInput("C_open needs a positive even size");
  if (j < 1 || 2 * j > two_i) throw InvalidInput("C_open cup index out of range");
  std::vector<Arc> arcs{{{Side::L, 1}, {Side::R, 2 * j - 1}}, {{Side::L, 2}, {Side::R, 2 * j}}};
  for (int t = 1; 2 * t <= two_i; ++t)
    if (t != j) arcs.push_back({{Side::R, 2 * t - 1}, {Side::R, 2 * t}});
  return Diagram::from_arcs(2, two_i, arcs);
}

DiagramSpace::DiagramSpace(int m, int n) : m_(m), n_(n), items_(enumerate_diagrams(m, n)) {
  for (std::uint32_t i = 0; i < items_.size(); ++i) {
    index_.emplace(items_[i].key(), i);
    if (items_[i].is_identity()) identity_ = static_cast<int>(i);
  }
}

std::uint32_t DiagramSpace::index_of(const Diagram& d) const {
  if (d.left() != m_ || d.right() != n_) throw InvalidInput("diagram does not belong to this space");
  return index_.at(d.key());
}

std::shared_ptr<const DiagramSpace> diagram_space(int m, int n) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const DiagramSpace>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[{m, n}];
  if (!slot) slot = std::make_shared<DiagramSpace>(m, n);
  return slot;
}

CompositionTable::CompositionTable(std::shared_ptr<const DiagramSpace> a, std::shared_ptr<const DiagramSpace> b)
    : a_(std::move(a)), b_(std::move(b)), c_(diagram_space(a_->left(), b_->right())), nb_(b_->size()) {
  result_.resize(a_->size() * nb_);
  loops_.resize(a_->size() * nb_);
  for (std::size_t i = 0; i < a_->size(); ++i)
    for (std::size_t j = 0; j < nb_; ++j) {
      auto r = compose((*a_)[i], (*b_)[j]);
      result_[i * nb_ + j] = c_->index_of(r.diagram);
      loops_[i * nb_ + j] = static_cast<std::uint8_t>(r.loops);
    }
}

std::shared_ptr<const CompositionTable> composition_table(int l, int m, int n) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, int>, std::shared_ptr<const CompositionTable>> cache;
  {
    std::lock_guard lock(mu);
    auto it = cache.find({l, m, n});
    if (it != cache.end()) return it->second;
  }
  auto t = std::make_shared<const CompositionTable>(diagram_space(l, m), diagram_space(m, n));
  std::lock_guard lock(mu);
  return cache.emplace(std::make_tuple(l, m, n), t).first->second;
}

std::uint64_t catalan(int k) {
  std::uint64_t c = 1;
  for (int j = 0; j < k; ++j) c = c * 2 * (2 * j + 1) / (j + 2);
  return c;
}

}  // namespace tlh
