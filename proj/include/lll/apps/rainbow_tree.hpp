#pragma once

// t pairwise edge-disjoint rainbow spanning trees of an edge-colored K_n.
//
// Bad events, type 1 before type 2:
//   type 1 (i, e, f): edges e < f of equal color both lie in T_i;
//     probability 3/n^2 if e and f share a vertex, 4/n^2 otherwise.
//   type 2 (i, j, e), i < j: edge e lies in T_i and T_j; probability 4/n^2.
// Clique keys are (tree, vertex): events are adjacent iff some tree carries
// components of both that touch a common vertex.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lll/apps/coloring.hpp"
#include "lll/apps/common.hpp"
#include "lll/oracles/product.hpp"
#include "lll/oracles/spanning_trees.hpp"

namespace lll {

class RainbowTreesProblem {
 public:
  using State = std::vector<SpanningTree>;

  struct EventInfo {
    int type = 1;
    int i = 0;
    int j = -1;  // type 2 only
    Edge e;
    Edge f{-1, -1};  // type 1 only
  };

  RainbowTreesProblem(ColoredCompleteGraph colors, int t)
      : colors_(std::move(colors)), t_(t), bundle_(std::vector<TreeSpace>(static_cast<std::size_t>(std::max(t, 0)), TreeSpace(colors_.n()))) {
    if (t < 1) throw InputError("need at least one tree");
    const int n = colors_.n();
    if (n < 2) throw InputError("rainbow trees need at least two vertices");
    rank_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), -1);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) {
        rank_[static_cast<std::size_t>(u * n + v)] = static_cast<int>(edges_.size());
        edges_.emplace_back(u, v);
      }
    for (const auto& [c, es] : colors_.color_classes())
      for (std::size_t x = 0; x < es.size(); ++x)
        for (std::size_t y = x + 1; y < es.size(); ++y) pairs_.emplace_back(rank(es[x]), rank(es[y]));
    std::sort(pairs_.begin(), pairs_.end());
    for (std::size_t k = 0; k < pairs_.size(); ++k) pair_index_.emplace(pair_key(pairs_[k].first, pairs_[k].second), static_cast<int>(k));

    // Per-space events: single edges first (index = rank), then the pairs.
    const int m = num_edges();
    for (int s = 0; s < t_; ++s) {
      auto& sp = bundle_.space(s);
      for (const auto& e : edges_) sp.add_event({e});
      for (const auto& [a, b] : pairs_) sp.add_event({edges_[static_cast<std::size_t>(a)], edges_[static_cast<std::size_t>(b)]});
    }
    for (int i = 0; i < t_; ++i)
      for (int k = 0; k < num_pairs(); ++k) bundle_.add_event({{i, m + k}});
    for (int i = 0; i < t_; ++i)
      for (int j = i + 1; j < t_; ++j)
        for (int a = 0; a < m; ++a) bundle_.add_event({{i, a}, {j, a}});
  }

  const ColoredCompleteGraph& colors() const noexcept { return colors_; }
  int n() const noexcept { return colors_.n(); }
  int t() const noexcept { return t_; }
  int num_edges() const noexcept { return static_cast<int>(edges_.size()); }
  int num_pairs() const noexcept { return static_cast<int>(pairs_.size()); }
  int num_type1() const noexcept { return t_ * num_pairs(); }
  const ProductBundle<TreeSpace>& bundle() const noexcept { return bundle_; }

  int num_events() const noexcept { return bundle_.num_events(); }
  State sample(Rng& rng) const { return bundle_.sample(rng); }
  bool holds(int e, const State& s) const { return bundle_.holds(e, s); }
  void resample(int e, State& s, Rng& rng) const { bundle_.resample(e, s, rng); }
  bool adjacent(int a, int b) const { return bundle_.adjacent(a, b); }

  std::vector<int> occurring(const State& s) const {
    std::vector<int> out;
    std::vector<std::pair<int, int>> by_color;
    for (int i = 0; i < t_; ++i) {
      by_color.clear();
      for (const auto& e : s[static_cast<std::size_t>(i)].edges()) by_color.emplace_back(colors_.color(e), rank(make_edge(e.first, e.second)));
      std::sort(by_color.begin(), by_color.end());
      for_each_same_group_pair(by_color, [&](int a, int b) {
        out.push_back(i * num_pairs() + pair_index_.at(pair_key(a, b)));
      });
    }
    int block = num_type1();
    for (int i = 0; i < t_; ++i)
      for (int j = i + 1; j < t_; ++j, block += num_edges())
        for (const auto& e : s[static_cast<std::size_t>(i)].edges())
          if (s[static_cast<std::size_t>(j)].contains(e)) out.push_back(block + rank(make_edge(e.first, e.second)));
    std::sort(out.begin(), out.end());
    return out;
  }

  EventInfo info(int e) const {
    const auto& ev = bundle_.event(e);
    EventInfo out;
    if (e < num_type1()) {
      const auto& pr = pairs_[static_cast<std::size_t>(ev[0].event - num_edges())];
      out.i = ev[0].space;
      out.e = edges_[static_cast<std::size_t>(pr.first)];
      out.f = edges_[static_cast<std::size_t>(pr.second)];
    } else {
      out.type = 2;
      out.i = ev[0].space;
      out.j = ev[1].space;
      out.e = edges_[static_cast<std::size_t>(ev[0].event)];
    }
    return out;
  }

  double probability(int e) const { return bundle_.probability(e); }

  std::vector<CliqueKey> clique_keys(int e) const {
    std::vector<CliqueKey> out;
    for (const auto& c : bundle_.event(e))
      for (int v : bundle_.space(c.space).labels(c.event)) out.push_back(CliqueKey{c.space} * n() + v);
    return out;
  }

  /// y_E = (8/7)^8 * 4/n^2 for every event.
  AppCriterion criterion() const {
    const double n = this->n();
    std::vector<double> p(static_cast<std::size_t>(num_events()));
    for (int e = 0; e < num_events(); ++e) p[static_cast<std::size_t>(e)] = probability(e);
    std::vector<double> y(p.size(), std::pow(8.0 / 7.0, 8) * 4 / (n * n));
    return make_app_criterion(std::move(p), std::move(y), [&](int e) { return clique_keys(e); });
  }

  DependencyGraph graph() const {
    return clique_graph(num_events(), [&](int e) { return clique_keys(e); });
  }

 private:
  int rank(const Edge& e) const { return rank_[static_cast<std::size_t>(e.first * n() + e.second)]; }

  std::uint64_t pair_key(int a, int b) const {
    return static_cast<std::uint64_t>(a) * static_cast<std::uint64_t>(num_edges()) + static_cast<std::uint64_t>(b);
  }

  ColoredCompleteGraph colors_;
  int t_;
  ProductBundle<TreeSpace> bundle_;
  EdgeList edges_;
  std::vector<int> rank_;
  std::vector<std::pair<int, int>> pairs_;
  std::unordered_map<std::uint64_t, int> pair_index_;
};

/// Independent check: t spanning trees of K_n, each rainbow, pairwise
/// edge-disjoint.
inline bool is_disjoint_rainbow_trees(const ColoredCompleteGraph& g, int t, const std::vector<EdgeList>& trees) {
  const int n = g.n();
  if (static_cast<int>(trees.size()) != t) return false;
  std::unordered_map<long long, int> used;
  for (const auto& tree : trees) {
    if (static_cast<int>(tree.size()) != n - 1) return false;
    std::vector<int> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      return x;
    };
    std::unordered_map<int, int> colors;
    for (auto [a, b] : tree) {
      if (a < 0 || b < 0 || a >= n || b >= n || a == b) return false;
      const int ra = find(a), rb = find(b);
      if (ra == rb) return false;
      parent[static_cast<std::size_t>(ra)] = rb;
      if (colors[g.color(a, b)]++) return false;
      if (used[static_cast<long long>(std::min(a, b)) * n + std::max(a, b)]++) return false;
    }
  }
  return true;
}

}  // namespace lll
