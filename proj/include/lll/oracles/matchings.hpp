#pragma once

// Uniform random perfect matchings of K_{2n}, with events "A is contained in
// M" for partial matchings A.

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "lll/error.hpp"
#include "lll/rng.hpp"

namespace lll {

using Edge = std::pair<int, int>;
/// Sorted list of edges (a, b) with a < b.
using EdgeList = std::vector<Edge>;

inline Edge make_edge(int a, int b) { return a < b ? Edge{a, b} : Edge{b, a}; }

inline EdgeList normalize_edges(EdgeList edges, int vertices) {
  for (auto& e : edges) {
    if (e.first < 0 || e.second < 0 || e.first >= vertices || e.second >= vertices)
      throw InputError("edge endpoint out of range");
    if (e.first == e.second) throw InputError("self-loop in edge set");
    e = make_edge(e.first, e.second);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

inline std::vector<int> vertices_of(const EdgeList& edges) {
  std::vector<int> v;
  for (auto [a, b] : edges) {
    v.push_back(a);
    v.push_back(b);
  }
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

inline bool share_vertex(const EdgeList& a, const EdgeList& b) {
  for (auto [x, y] : a)
    for (auto [u, v] : b)
      if (x == u || x == v || y == u || y == v) return true;
  return false;
}

/// Partner array: mate[v] is the vertex matched to v.
using Matching = std::vector<int>;

inline bool is_perfect_matching(const Matching& mate) {
  for (std::size_t v = 0; v < mate.size(); ++v) {
    const int u = mate[v];
    if (u < 0 || static_cast<std::size_t>(u) >= mate.size() || static_cast<std::size_t>(u) == v) return false;
    if (mate[static_cast<std::size_t>(u)] != static_cast<int>(v)) return false;
  }
  return mate.size() % 2 == 0;
}

inline EdgeList matching_edges(const Matching& mate) {
  EdgeList out;
  for (std::size_t v = 0; v < mate.size(); ++v)
    if (static_cast<int>(v) < mate[v]) out.emplace_back(static_cast<int>(v), mate[v]);
  return out;
}

inline bool contains_all(const Matching& mate, const EdgeList& a) {
  for (auto [x, y] : a)
    if (mate[static_cast<std::size_t>(x)] != y) return false;
  return true;
}

/// Uniform perfect matching of K_{vertices}: shuffle and pair consecutive.
inline Matching random_perfect_matching(int vertices, Rng& rng) {
  std::vector<int> order(static_cast<std::size_t>(vertices));
  for (int i = 0; i < vertices; ++i) order[static_cast<std::size_t>(i)] = i;
  for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[uniform_below(rng, i)]);
  Matching mate(order.size());
  for (std::size_t k = 0; k + 1 < order.size(); k += 2) {
    mate[static_cast<std::size_t>(order[k])] = order[k + 1];
    mate[static_cast<std::size_t>(order[k + 1])] = order[k];
  }
  return mate;
}

/// Releases the edges of A one at a time (ascending). For the current edge
/// (u, v), with m edges of M' outside A', pick one such edge (x, y) uniformly
/// with a random orientation; with probability 1 - 1/(2m + 1) replace (u, v),
/// (x, y) by (u, y), (v, x).
inline void matching_resample(Matching& mate, const EdgeList& a, Rng& rng) {
  if (!contains_all(mate, a)) throw OracleError("matching oracle called with A not contained in M");
  std::vector<char> in_a(mate.size(), 0);
  for (auto [x, y] : a) in_a[static_cast<std::size_t>(x)] = in_a[static_cast<std::size_t>(y)] = 1;
  // Edges of M' \ A', each stored once.
  EdgeList rest;
  for (std::size_t v = 0; v < mate.size(); ++v)
    if (!in_a[v] && static_cast<int>(v) < mate[v]) rest.emplace_back(static_cast<int>(v), mate[v]);
  for (auto [u, v] : a) {
    const auto m = static_cast<std::uint64_t>(rest.size());
    if (m == 0) {
      rest.emplace_back(u, v);
      continue;
    }
    const std::size_t idx = uniform_below(rng, m);
    auto [x, y] = rest[idx];
    if (fair_bit(rng)) std::swap(x, y);
    if (uniform_below(rng, 2 * m + 1) == 0) {
      rest.emplace_back(u, v);
      continue;
    }
    mate[static_cast<std::size_t>(u)] = y;
    mate[static_cast<std::size_t>(y)] = u;
    mate[static_cast<std::size_t>(v)] = x;
    mate[static_cast<std::size_t>(x)] = v;
    rest[idx] = Edge{u, y};
    rest.emplace_back(v, x);
  }
}

enum class MatchingDependency {
  /// A ~ B iff A union B is not a matching.
  kNotMatching,
  /// A ~ B iff A and B touch a common vertex (a superset of the above).
  kSharedVertex,
};

class MatchingSpace {
 public:
  using State = Matching;

  /// Perfect matchings of K_{2 * half}.
  explicit MatchingSpace(int half, MatchingDependency rule = MatchingDependency::kNotMatching)
      : half_(half), rule_(rule) {
    if (half < 1) throw InputError("matching space needs at least one edge");
  }

  int half() const noexcept { return half_; }
  int vertices() const noexcept { return 2 * half_; }
  MatchingDependency rule() const noexcept { return rule_; }

  int add_event(EdgeList a) {
    a = normalize_edges(std::move(a), vertices());
    if (vertices_of(a).size() != 2 * a.size()) throw InputError("matching event is not a matching");
    events_.push_back(std::move(a));
    return num_events() - 1;
  }

  int num_events() const noexcept { return static_cast<int>(events_.size()); }
  const EdgeList& event(int i) const { return events_.at(static_cast<std::size_t>(i)); }

  State sample(Rng& rng) const { return random_perfect_matching(vertices(), rng); }
  bool holds(int i, const State& m) const { return contains_all(m, event(i)); }

  void resample(int i, State& m, Rng& rng) const {
    matching_resample(m, event(i), rng);
#ifdef LLL_CHECK_INVARIANTS
    if (!is_perfect_matching(m)) throw Error("matching oracle produced an invalid matching");
#endif
  }

  bool adjacent(int i, int j) const {
    if (i == j) return false;
    const auto& a = event(i);
    const auto& b = event(j);
    if (rule_ == MatchingDependency::kSharedVertex) return share_vertex(a, b);
    for (const auto& e : a)
      for (const auto& f : b)
        if (e != f && (e.first == f.first || e.first == f.second || e.second == f.first || e.second == f.second))
          return true;
    return false;
  }

  /// Vertices of the event; cliques in the shared-vertex rule only.
  std::vector<int> labels(int i) const { return vertices_of(event(i)); }

  /// Pr[A in M] = 1 / ((2n-1)(2n-3)...(2n-2|A|+1)).
  double probability(int i) const {
    double r = 1;
    for (std::size_t k = 0; k < event(i).size(); ++k) r /= static_cast<double>(2 * (half_ - static_cast<int>(k)) - 1);
    return r;
  }

 private:
  int half_;
  MatchingDependency rule_;
  std::vector<EdgeList> events_;
};

}  // namespace lll
