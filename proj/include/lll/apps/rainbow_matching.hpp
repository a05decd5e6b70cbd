#pragma once

// Rainbow perfect matchings of an edge-colored K_{2n}.
//
// One bad event per unordered pair of vertex-disjoint edges e < f of equal
// color (pairs sharing a vertex never lie on one matching): both lie on M.
// Probability 1 / ((2n-1)(2n-3)). Events touching a common vertex are
// adjacent; the clique keys are the four vertices.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lll/apps/coloring.hpp"
#include "lll/apps/common.hpp"
#include "lll/oracles/matchings.hpp"

namespace lll {

class RainbowMatchingProblem {
 public:
  using State = Matching;

  explicit RainbowMatchingProblem(ColoredCompleteGraph colors)
      : colors_(std::move(colors)), space_(half_of(colors_.n()), MatchingDependency::kSharedVertex) {
    std::vector<std::pair<Edge, Edge>> pairs;
    for (const auto& [c, edges] : colors_.color_classes())
      for (std::size_t x = 0; x < edges.size(); ++x)
        for (std::size_t y = x + 1; y < edges.size(); ++y)
          if (!share_vertex({edges[x]}, {edges[y]})) pairs.emplace_back(edges[x], edges[y]);
    std::sort(pairs.begin(), pairs.end());
    for (const auto& [e, f] : pairs) {
      index_.emplace(pair_key(e, f), space_.num_events());
      space_.add_event({e, f});
    }
  }

  const ColoredCompleteGraph& colors() const noexcept { return colors_; }
  int vertices() const noexcept { return colors_.n(); }
  const MatchingSpace& space() const noexcept { return space_; }

  int num_events() const noexcept { return space_.num_events(); }
  State sample(Rng& rng) const { return space_.sample(rng); }
  bool holds(int e, const State& m) const { return space_.holds(e, m); }
  void resample(int e, State& m, Rng& rng) const { space_.resample(e, m, rng); }
  bool adjacent(int a, int b) const { return space_.adjacent(a, b); }

  std::vector<int> occurring(const State& m) const {
    std::vector<std::pair<int, Edge>> by_color;
    for (const auto& e : matching_edges(m)) by_color.emplace_back(colors_.color(e), e);
    std::sort(by_color.begin(), by_color.end());
    std::vector<int> out;
    for_each_same_group_pair(by_color, [&](const Edge& e, const Edge& f) { out.push_back(index_.at(pair_key(e, f))); });
    std::sort(out.begin(), out.end());
    return out;
  }

  /// The two edges of event e.
  const EdgeList& edges(int e) const { return space_.event(e); }

  double probability(int e) const { return space_.probability(e); }

  std::vector<CliqueKey> clique_keys(int e) const {
    std::vector<CliqueKey> out;
    for (int v : space_.labels(e)) out.push_back(v);
    return out;
  }

  /// y_E = (4/3)^4 / ((2n-1)(2n-3)) for every event.
  AppCriterion criterion() const {
    std::vector<double> p(static_cast<std::size_t>(num_events()));
    for (int e = 0; e < num_events(); ++e) p[static_cast<std::size_t>(e)] = probability(e);
    const double v = vertices();
    std::vector<double> y(p.size(), std::pow(4.0 / 3.0, 4) / ((v - 1) * (v - 3)));
    return make_app_criterion(std::move(p), std::move(y), [&](int e) { return clique_keys(e); });
  }

  DependencyGraph graph() const {
    return clique_graph(num_events(), [&](int e) { return clique_keys(e); });
  }

 private:
  static int half_of(int vertices) {
    if (vertices < 4 || vertices % 2 != 0) throw InputError("rainbow matching needs an even number of at least 4 vertices");
    return vertices / 2;
  }

  std::uint64_t pair_key(const Edge& e, const Edge& f) const {
    const auto v = static_cast<std::uint64_t>(vertices());
    auto code = [&](const Edge& x) { return static_cast<std::uint64_t>(x.first) * v + static_cast<std::uint64_t>(x.second); };
    const auto a = std::min(code(e), code(f));
    const auto b = std::max(code(e), code(f));
    return a * v * v + b;
  }

  ColoredCompleteGraph colors_;
  MatchingSpace space_;
  std::unordered_map<std::uint64_t, int> index_;
};

/// Independent check: a perfect matching of K_{2n} whose edges have
/// distinct colors.
inline bool is_rainbow_perfect_matching(const ColoredCompleteGraph& g, const Matching& mate) {
  if (static_cast<int>(mate.size()) != g.n()) return false;
  std::unordered_map<int, int> seen;
  for (std::size_t v = 0; v < mate.size(); ++v) {
    const int u = mate[v];
    if (u < 0 || u >= g.n() || static_cast<std::size_t>(u) == v || mate[static_cast<std::size_t>(u)] != static_cast<int>(v)) return false;
    if (static_cast<std::size_t>(u) > v && seen[g.color(static_cast<int>(v), u)]++) return false;
  }
  return true;
}

}  // namespace lll
