#pragma once

// Uniform random spanning trees of K_n with events "A is contained in T" for
// forests A, plus a weighted Wilson sampler for multigraphs.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "lll/error.hpp"
#include "lll/oracles/matchings.hpp"
#include "lll/rng.hpp"

namespace lll {

/// Undirected multigraph; each edge carries a positive integer multiplicity.
/// Self-loops are dropped since they never enter a spanning tree.
class Multigraph {
 public:
  struct Arc {
    int to;
    int edge;
  };
  struct WeightedEdge {
    int u, v;
    std::uint64_t multiplicity;
  };

  explicit Multigraph(int nodes) : adj_(static_cast<std::size_t>(nodes)), total_(static_cast<std::size_t>(nodes), 0) {}

  int add_edge(int u, int v, std::uint64_t multiplicity = 1) {
    if (u < 0 || v < 0 || u >= nodes() || v >= nodes()) throw std::out_of_range("multigraph node out of range");
    if (u == v || multiplicity == 0) return -1;
    const int id = static_cast<int>(edges_.size());
    edges_.push_back({u, v, multiplicity});
    adj_[static_cast<std::size_t>(u)].push_back({v, id});
    adj_[static_cast<std::size_t>(v)].push_back({u, id});
    total_[static_cast<std::size_t>(u)] += multiplicity;
    total_[static_cast<std::size_t>(v)] += multiplicity;
    return id;
  }

  int nodes() const noexcept { return static_cast<int>(adj_.size()); }
  const std::vector<WeightedEdge>& edges() const noexcept { return edges_; }
  const std::vector<Arc>& arcs(int u) const { return adj_[static_cast<std::size_t>(u)]; }
  std::uint64_t weight(int u) const { return total_[static_cast<std::size_t>(u)]; }

  bool connected() const {
    if (nodes() == 0) return true;
    std::vector<char> seen(adj_.size(), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (const auto& a : arcs(u))
        if (!seen[static_cast<std::size_t>(a.to)]) {
          seen[static_cast<std::size_t>(a.to)] = 1;
          ++count;
          stack.push_back(a.to);
        }
    }
    return count == nodes();
  }

 private:
  std::vector<std::vector<Arc>> adj_;
  std::vector<std::uint64_t> total_;
  std::vector<WeightedEdge> edges_;
};

/// A chosen parallel copy of a multigraph edge.
struct TreeEdgeChoice {
  int edge;
  std::uint64_t copy;
};

/// Spanning tree drawn with probability proportional to the product of edge
/// multiplicities (Wilson's loop-erased random walk, rooted at node 0). One
/// uniform draw over a node's total multiplicity picks both the edge and the
/// parallel copy taken.
inline std::vector<TreeEdgeChoice> uniform_spanning_tree(const Multigraph& g, Rng& rng) {
  const int n = g.nodes();
  if (!g.connected()) throw InputError("uniform_spanning_tree: graph is disconnected");
  std::vector<TreeEdgeChoice> out;
  if (n <= 1) return out;
  std::vector<char> in_tree(static_cast<std::size_t>(n), 0);
  std::vector<int> next(static_cast<std::size_t>(n), -1);
  std::vector<TreeEdgeChoice> via(static_cast<std::size_t>(n));
  in_tree[0] = 1;
  for (int start = 1; start < n; ++start) {
    for (int u = start; !in_tree[static_cast<std::size_t>(u)];) {
      std::uint64_t r = uniform_below(rng, g.weight(u));
      for (const auto& a : g.arcs(u)) {
        const std::uint64_t m = g.edges()[static_cast<std::size_t>(a.edge)].multiplicity;
        if (r < m) {
          next[static_cast<std::size_t>(u)] = a.to;
          via[static_cast<std::size_t>(u)] = {a.edge, r};
          break;
        }
        r -= m;
      }
      u = next[static_cast<std::size_t>(u)];
    }
    for (int u = start; !in_tree[static_cast<std::size_t>(u)]; u = next[static_cast<std::size_t>(u)]) {
      in_tree[static_cast<std::size_t>(u)] = 1;
      out.push_back(via[static_cast<std::size_t>(u)]);
    }
  }
  return out;
}

/// Spanning tree of K_n: edge list plus an n x n membership table.
class SpanningTree {
 public:
  SpanningTree() = default;
  explicit SpanningTree(int n) : n_(n), member_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0) {}

  SpanningTree(int n, const EdgeList& edges) : SpanningTree(n) {
    for (auto [a, b] : edges) add(a, b);
  }

  int n() const noexcept { return n_; }
  bool contains(int a, int b) const {
    return member_[static_cast<std::size_t>(a) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(b)] != 0;
  }
  bool contains(const Edge& e) const { return contains(e.first, e.second); }

  void add(int a, int b) {
    set(a, b, 1);
    edges_.push_back(make_edge(a, b));
  }

  /// Drops every edge touching a vertex flagged in `touch`.
  void remove_touching(const std::vector<char>& touch) {
    EdgeList kept;
    for (const auto& e : edges_) {
      if (touch[static_cast<std::size_t>(e.first)] || touch[static_cast<std::size_t>(e.second)]) {
        set(e.first, e.second, 0);
      } else {
        kept.push_back(e);
      }
    }
    edges_ = std::move(kept);
  }

  /// Edges in insertion order (not necessarily sorted).
  const EdgeList& edges() const noexcept { return edges_; }

  EdgeList sorted_edges() const {
    EdgeList e = edges_;
    std::sort(e.begin(), e.end());
    return e;
  }

  friend bool operator==(const SpanningTree& a, const SpanningTree& b) {
    return a.n_ == b.n_ && a.member_ == b.member_;
  }

 private:
  void set(int a, int b, unsigned char v) {
    member_[static_cast<std::size_t>(a) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(b)] = v;
    member_[static_cast<std::size_t>(b) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(a)] = v;
  }

  int n_ = 0;
  std::vector<unsigned char> member_;
  EdgeList edges_;
};

inline bool is_spanning_tree(int n, const EdgeList& edges) {
  if (n == 0) return edges.empty();
  if (static_cast<int>(edges.size()) != n - 1) return false;
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    return x;
  };
  for (auto [a, b] : edges) {
    if (a < 0 || b < 0 || a >= n || b >= n || a == b) return false;
    const int ra = find(a), rb = find(b);
    if (ra == rb) return false;
    parent[static_cast<std::size_t>(ra)] = rb;
  }
  return true;
}

/// Tree on [n] encoded by a Pruefer sequence of length n - 2.
inline EdgeList decode_pruefer(const std::vector<int>& seq, int n) {
  EdgeList out;
  if (n <= 1) return out;
  if (n == 2) return {{0, 1}};
  std::vector<int> degree(static_cast<std::size_t>(n), 1);
  for (int v : seq) ++degree[static_cast<std::size_t>(v)];
  std::priority_queue<int, std::vector<int>, std::greater<>> leaves;
  for (int v = 0; v < n; ++v)
    if (degree[static_cast<std::size_t>(v)] == 1) leaves.push(v);
  for (int v : seq) {
    const int leaf = leaves.top();
    leaves.pop();
    out.push_back(make_edge(leaf, v));
    if (--degree[static_cast<std::size_t>(v)] == 1) leaves.push(v);
  }
  const int a = leaves.top();
  leaves.pop();
  out.push_back(make_edge(a, leaves.top()));
  return out;
}

inline SpanningTree random_spanning_tree(int n, Rng& rng) {
  std::vector<int> seq(static_cast<std::size_t>(std::max(0, n - 2)));
  for (auto& v : seq) v = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n)));
  return SpanningTree(n, decode_pruefer(seq, n));
}

/// Keeps the tree edges away from W = V(A), then reconnects through W with a
/// uniform spanning tree of (K_n minus the deleted non-tree edges) with the
/// kept forest contracted. Super-nodes: each w in W, and each component C of
/// the kept forest; w-w' has multiplicity 1, w-C has multiplicity |C|.
inline void tree_resample(SpanningTree& t, const EdgeList& a, Rng& rng) {
  for (const auto& e : a)
    if (!t.contains(e)) throw OracleError("tree oracle called with A not contained in T");
  if (a.empty()) return;
  const int n = t.n();
  std::vector<char> in_w(static_cast<std::size_t>(n), 0);
  for (auto [x, y] : a) in_w[static_cast<std::size_t>(x)] = in_w[static_cast<std::size_t>(y)] = 1;
  t.remove_touching(in_w);

  // Components of the kept forest on V \ W.
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    return x;
  };
  for (auto [x, y] : t.edges()) parent[static_cast<std::size_t>(find(x))] = find(y);

  std::vector<int> w_nodes;
  std::vector<int> node_of(static_cast<std::size_t>(n), -1);
  for (int v = 0; v < n; ++v)
    if (in_w[static_cast<std::size_t>(v)]) {
      node_of[static_cast<std::size_t>(v)] = static_cast<int>(w_nodes.size());
      w_nodes.push_back(v);
    }
  const int k = static_cast<int>(w_nodes.size());
  std::vector<std::vector<int>> members;  // component index -> vertices, ascending
  std::vector<int> comp_of_root(static_cast<std::size_t>(n), -1);
  for (int v = 0; v < n; ++v) {
    if (in_w[static_cast<std::size_t>(v)]) continue;
    const int r = find(v);
    if (comp_of_root[static_cast<std::size_t>(r)] < 0) {
      comp_of_root[static_cast<std::size_t>(r)] = static_cast<int>(members.size());
      members.emplace_back();
    }
    members[static_cast<std::size_t>(comp_of_root[static_cast<std::size_t>(r)])].push_back(v);
  }

  Multigraph g(k + static_cast<int>(members.size()));
  struct Origin {
    int w;
    int other;  // vertex for w-w' edges, component index otherwise
    bool to_component;
  };
  std::vector<Origin> origin;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      g.add_edge(i, j, 1);
      origin.push_back({w_nodes[static_cast<std::size_t>(i)], w_nodes[static_cast<std::size_t>(j)], false});
    }
  for (int i = 0; i < k; ++i)
    for (std::size_t c = 0; c < members.size(); ++c) {
      g.add_edge(i, k + static_cast<int>(c), members[c].size());
      origin.push_back({w_nodes[static_cast<std::size_t>(i)], static_cast<int>(c), true});
    }
  for (const auto& choice : uniform_spanning_tree(g, rng)) {
    const Origin& o = origin[static_cast<std::size_t>(choice.edge)];
    if (o.to_component) {
      t.add(o.w, members[static_cast<std::size_t>(o.other)][static_cast<std::size_t>(choice.copy)]);
    } else {
      t.add(o.w, o.other);
    }
  }
}

class TreeSpace {
 public:
  using State = SpanningTree;

  explicit TreeSpace(int n) : n_(n) {
    if (n < 1) throw InputError("tree space needs at least one vertex");
  }

  int vertices() const noexcept { return n_; }

  int add_event(EdgeList a) {
    a = normalize_edges(std::move(a), n_);
    if (!is_forest(a)) throw InputError("tree event is not a forest");
    events_.push_back(std::move(a));
    return num_events() - 1;
  }

  int num_events() const noexcept { return static_cast<int>(events_.size()); }
  const EdgeList& event(int i) const { return events_.at(static_cast<std::size_t>(i)); }

  State sample(Rng& rng) const { return random_spanning_tree(n_, rng); }

  bool holds(int i, const State& t) const {
    for (const auto& e : event(i))
      if (!t.contains(e)) return false;
    return true;
  }

  void resample(int i, State& t, Rng& rng) const {
    tree_resample(t, event(i), rng);
#ifdef LLL_CHECK_INVARIANTS
    if (!is_spanning_tree(n_, t.edges())) throw Error("tree oracle produced a non-tree");
#endif
  }

  /// Distinct events are adjacent unless vertex-disjoint.
  bool adjacent(int i, int j) const { return i != j && share_vertex(event(i), event(j)); }

  std::vector<int> labels(int i) const { return vertices_of(event(i)); }

  /// prod over components of f / n^(f-1).
  double probability(int i) const { return forest_probability(event(i), n_); }

  static bool is_forest(const EdgeList& a) {
    std::vector<int> vs = vertices_of(a);
    std::vector<int> parent(vs.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto idx = [&](int v) { return static_cast<int>(std::lower_bound(vs.begin(), vs.end(), v) - vs.begin()); };
    auto find = [&](int x) {
      while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
      return x;
    };
    for (auto [x, y] : a) {
      const int rx = find(idx(x)), ry = find(idx(y));
      if (rx == ry) return false;
      parent[static_cast<std::size_t>(rx)] = ry;
    }
    return true;
  }

  static double forest_probability(const EdgeList& a, int n) {
    std::vector<int> vs = vertices_of(a);
    std::vector<int> parent(vs.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto idx = [&](int v) { return static_cast<int>(std::lower_bound(vs.begin(), vs.end(), v) - vs.begin()); };
    auto find = [&](int x) {
      while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
      return x;
    };
    for (auto [x, y] : a) parent[static_cast<std::size_t>(find(idx(x)))] = find(idx(y));
    std::vector<int> size(vs.size(), 0);
    for (std::size_t v = 0; v < vs.size(); ++v) ++size[static_cast<std::size_t>(find(static_cast<int>(v)))];
    double r = 1;
    for (int f : size)
      if (f > 0) r *= f / std::pow(static_cast<double>(n), f - 1);
    return r;
  }

 private:
  int n_;
  std::vector<EdgeList> events_;
};

}  // namespace lll
