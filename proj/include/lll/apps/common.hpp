#pragma once

// Shared machinery for the combinatorial applications: clique-cover checks of
// the cluster-expansion criterion and predicted resample bounds.
//
// Every application event carries a list of clique keys, and two events are
// adjacent exactly when they share a key. An independent set then meets each
// clique at most once, so for every event E
//
//   sum over independent I in Gamma+(E) of prod_{F in I} y_F
//     <= prod over keys c of E of (1 + sum_{F has key c} y_F),
//
// and p_E times the right-hand side <= y_E implies the criterion at E.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lll/error.hpp"
#include "lll/graph.hpp"
#include "lll/polynomials.hpp"

namespace lll {

using CliqueKey = std::int64_t;

struct CliqueCoverReport {
  bool holds = false;
  /// max over events of p_E prod(1 + clique sums) / y_E
  double worst_ratio = 0;
  /// largest eps with (1 + eps) p_E prod(...) <= y_E for every event
  double epsilon = 0;
  std::size_t cliques = 0;
  std::size_t max_clique = 0;
};

template <class KeysFn>
CliqueCoverReport clique_cover_check(const std::vector<double>& p, const std::vector<double>& y, KeysFn keys) {
  if (p.size() != y.size()) throw InputError("p and y differ in length");
  std::unordered_map<CliqueKey, std::pair<double, std::size_t>> sums;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!(y[i] > 0)) throw InputError("y must be positive");
    for (CliqueKey k : keys(static_cast<int>(i))) {
      auto& s = sums[k];
      s.first += y[i];
      ++s.second;
    }
  }
  CliqueCoverReport rep;
  rep.cliques = sums.size();
  for (const auto& [k, s] : sums) rep.max_clique = std::max(rep.max_clique, s.second);
  for (std::size_t i = 0; i < p.size(); ++i) {
    double prod = 1;
    for (CliqueKey k : keys(static_cast<int>(i))) prod *= 1 + sums.at(k).first;
    rep.worst_ratio = std::max(rep.worst_ratio, p[i] * prod / y[i]);
  }
  rep.holds = rep.worst_ratio <= 1;
  rep.epsilon = rep.worst_ratio > 0 ? std::max(0.0, 1 / rep.worst_ratio - 1) : std::numeric_limits<double>::infinity();
  return rep;
}

/// Explicit graph in which events sharing a key are adjacent. Quadratic in
/// clique sizes; meant for small instances.
template <class KeysFn>
DependencyGraph clique_graph(int num_events, KeysFn keys) {
  std::unordered_map<CliqueKey, std::vector<int>> members;
  for (int i = 0; i < num_events; ++i)
    for (CliqueKey k : keys(i)) members[k].push_back(i);
  std::vector<std::pair<int, int>> edges;
  for (const auto& [k, m] : members)
    for (std::size_t a = 0; a < m.size(); ++a)
      for (std::size_t b = a + 1; b < m.size(); ++b) edges.emplace_back(std::min(m[a], m[b]), std::max(m[a], m[b]));
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return DependencyGraph(num_events, edges);
}

/// Cluster-expansion data of an application instance.
struct AppCriterion {
  std::vector<double> p;
  std::vector<double> y;
  CliqueCoverReport cover;

  CriterionParams params() const { return {CriterionKind::kCLL, {}, y, 0}; }

  double sum_y() const {
    double s = 0;
    for (double v : y) s += v;
    return s;
  }

  /// Bound without slack; the one the applications are measured against.
  double bound(double t) const { return bounds::cll_no_slack(y, t); }

  /// Bound at the automatically found slack, or infinity if there is none.
  double bound_with_slack(double t) const {
    if (!(cover.epsilon > 0)) return std::numeric_limits<double>::infinity();
    return bounds::cll_with_slack(y, cover.epsilon, t);
  }
};

template <class KeysFn>
AppCriterion make_app_criterion(std::vector<double> p, std::vector<double> y, KeysFn keys) {
  AppCriterion c{std::move(p), std::move(y), {}};
  c.cover = clique_cover_check(c.p, c.y, keys);
  return c;
}

/// Pairs of positions in `items` (given as (group, payload) sorted by group)
/// that share a group; calls f(payload_a, payload_b) for each such pair.
template <class T, class F>
void for_each_same_group_pair(const std::vector<std::pair<int, T>>& items, F f) {
  for (std::size_t a = 0; a < items.size();) {
    std::size_t b = a;
    while (b < items.size() && items[b].first == items[a].first) ++b;
    for (std::size_t x = a; x < b; ++x)
      for (std::size_t y = x + 1; y < b; ++y) f(items[x].second, items[y].second);
    a = b;
  }
}

}  // namespace lll
