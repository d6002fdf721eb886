#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace cutlab {

// Exact path: happiness decisions must never round, and compiled gadget
// weights reach 2^(3N), so edge weights are arbitrary-precision integers.
using Weight = boost::multiprecision::cpp_int;
using NodeId = std::uint32_t;

template <class W>
struct EdgeT {
  NodeId u;
  NodeId v;
  W w;
};
using Edge = EdgeT<Weight>;

struct Incidence {
  NodeId neighbor;
  std::size_t edge;  // index into edges()
};

// Undirected simple graph. No self-loops, no parallel edges; for the exact
// instantiation every weight is > 0 (perturbed real graphs may go negative).
// Immutable by convention once built: operations on it are pure.
template <class W>
class BasicGraph {
 public:
  BasicGraph() = default;
  explicit BasicGraph(std::size_t node_count) : adj_(node_count) {}

  static BasicGraph from_edges(std::size_t node_count, const std::vector<EdgeT<W>>& edges) {
    BasicGraph g(node_count);
    for (const auto& e : edges) g.add_edge(e.u, e.v, e.w);
    return g;
  }

  void add_edge(NodeId u, NodeId v, W w) {
    if (u >= node_count() || v >= node_count())
      throw std::out_of_range("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("self-loop rejected");
    for (const auto& inc : adj_[u])
      if (inc.neighbor == v) throw std::invalid_argument("parallel edge rejected");
    if constexpr (std::is_same_v<W, Weight>) {
      if (w <= 0) throw std::invalid_argument("edge weight must be positive");
    }
    const std::size_t idx = edges_.size();
    edges_.push_back(EdgeT<W>{u, v, std::move(w)});
    adj_[u].push_back(Incidence{v, idx});
    adj_[v].push_back(Incidence{u, idx});
  }

  // Same structure, new weights (used by scale / normalize / perturb).
  BasicGraph with_weights(std::vector<W> weights) const {
    if (weights.size() != edges_.size()) throw std::invalid_argument("weight count mismatch");
    BasicGraph g = *this;
    for (std::size_t i = 0; i < weights.size(); ++i) g.edges_[i].w = std::move(weights[i]);
    return g;
  }

  std::size_t node_count() const { return adj_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<EdgeT<W>>& edges() const { return edges_; }
  const EdgeT<W>& edge(std::size_t i) const { return edges_.at(i); }
  const W& weight(std::size_t i) const { return edges_.at(i).w; }
  const std::vector<Incidence>& incident(NodeId v) const { return adj_.at(v); }
  std::size_t degree(NodeId v) const { return adj_.at(v).size(); }

  bool has_edge(NodeId u, NodeId v) const {
    if (u >= node_count() || v >= node_count()) return false;
    const auto& a = adj_[degree(u) <= degree(v) ? u : v];
    const NodeId other = degree(u) <= degree(v) ? v : u;
    for (const auto& inc : a)
      if (inc.neighbor == other) return true;
    return false;
  }

  std::size_t max_degree() const {
    std::size_t d = 0;
    for (const auto& a : adj_) d = std::max(d, a.size());
    return d;
  }

  W total_weight() const {
    W t{};
    for (const auto& e : edges_) t += e.w;
    return t;
  }

 private:
  std::vector<EdgeT<W>> edges_;
  std::vector<std::vector<Incidence>> adj_;
};

using Graph = BasicGraph<Weight>;

// 2-coloring of the nodes; the local search state. 0 = white, 1 = black.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::size_t n, bool color = false) : bits_(n, color ? 1 : 0) {}

  static Partition from_string(const std::string& s) {
    Partition p(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] != '0' && s[i] != '1') throw std::invalid_argument("partition charset is {0,1}");
      p.bits_[i] = static_cast<std::uint8_t>(s[i] - '0');
    }
    return p;
  }

  std::size_t size() const { return bits_.size(); }
  bool color(NodeId v) const { return bits_.at(v) != 0; }
  void set(NodeId v, bool c) { bits_.at(v) = c ? 1 : 0; }
  void flip(NodeId v) { bits_.at(v) ^= 1; }

  Partition complemented() const {
    Partition p = *this;
    for (auto& b : p.bits_) b ^= 1;
    return p;
  }

  // Representative of {P, complement(P)} with node 0 white.
  Partition canonical() const { return (!bits_.empty() && bits_[0]) ? complemented() : *this; }

  std::string to_string() const {
    std::string s(bits_.size(), '0');
    for (std::size_t i = 0; i < bits_.size(); ++i) s[i] = bits_[i] ? '1' : '0';
    return s;
  }

  friend bool operator==(const Partition& a, const Partition& b) { return a.bits_ == b.bits_; }
  friend bool operator<(const Partition& a, const Partition& b) { return a.bits_ < b.bits_; }

 private:
  std::vector<std::uint8_t> bits_;
};

template <class W>
void require_match(const BasicGraph<W>& g, const Partition& p) {
  if (p.size() != g.node_count())
    throw std::invalid_argument("partition length does not match graph");
}

template <class W>
W cut_weight(const BasicGraph<W>& g, const Partition& p) {
  require_match(g, p);
  W total{};
  for (const auto& e : g.edges())
    if (p.color(e.u) != p.color(e.v)) total += e.w;
  return total;
}

// Cut change caused by flipping v, computed from v's incident edges only:
// uncut edges join the cut (+w), cut edges leave it (-w).
template <class W>
W gain(const BasicGraph<W>& g, const Partition& p, NodeId v) {
  require_match(g, p);
  if (v >= g.node_count()) throw std::out_of_range("node out of range");
  W acc{};
  const bool cv = p.color(v);
  for (const auto& inc : g.incident(v)) {
    const W& w = g.weight(inc.edge);
    if (p.color(inc.neighbor) == cv)
      acc += w;
    else
      acc -= w;
  }
  return acc;
}

// Nodes whose flip strictly increases the cut, ascending by id.
// Empty result <=> p is a local optimum.
template <class W>
std::vector<NodeId> unhappy_nodes(const BasicGraph<W>& g, const Partition& p) {
  require_match(g, p);
  std::vector<NodeId> out;
  for (NodeId v = 0; v < g.node_count(); ++v)
    if (gain(g, p, v) > W{}) out.push_back(v);
  return out;
}

template <class W>
std::size_t max_degree(const BasicGraph<W>& g) {
  return g.max_degree();
}

enum class NodeType { TypeI, TypeIII, Other };

// Degree-<=4 weight pattern of a node; missing edges count as weight 0.
// top[0] >= top[1] >= top[2] >= top[3].
struct NodeClass {
  NodeType type = NodeType::Other;
  std::array<Weight, 4> top{};
  std::size_t degree = 0;
};

// TypeI  iff top0 > top1 + top2 + top3   (happy <=> heaviest edge in cut)
// TypeIII iff top0 + top3 < top1 + top2  (happy <=> >=2 of top-3 in cut)
// Degree >= 5 is Other with the degree recorded.
inline NodeClass classify_node(const Graph& g, NodeId v) {
  NodeClass c;
  c.degree = g.degree(v);
  if (c.degree > 4) return c;
  std::vector<Weight> ws;
  ws.reserve(c.degree);
  for (const auto& inc : g.incident(v)) ws.push_back(g.weight(inc.edge));
  std::sort(ws.begin(), ws.end(), std::greater<Weight>());
  for (std::size_t i = 0; i < ws.size(); ++i) c.top[i] = ws[i];
  if (c.top[0] > c.top[1] + c.top[2] + c.top[3])
    c.type = NodeType::TypeI;
  else if (c.top[0] + c.top[3] < c.top[1] + c.top[2])
    c.type = NodeType::TypeIII;
  return c;
}

}  // namespace cutlab
