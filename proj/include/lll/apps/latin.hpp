#pragma once

// t pairwise disjoint rainbow transversals of a color matrix.
//
// A transversal is a permutation pi read as cells (r, pi(r)); it is rainbow
// when its n cells carry distinct colors. Bad events, type 1 before type 2:
//   type 1 (i, a, b): cells a < b of equal color in distinct rows and columns
//     both lie on pi_i; probability 1 / (n(n-1)).
//   type 2 (i, j, a), i < j: cell a lies on pi_i and pi_j; probability 1/n^2.
// Cells are encoded row * n + col. Clique keys are (permutation, row) and
// (permutation, column).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lll/apps/coloring.hpp"
#include "lll/apps/common.hpp"
#include "lll/oracles/permutations.hpp"
#include "lll/oracles/product.hpp"

namespace lll {

class LatinTransversalProblem {
 public:
  using State = std::vector<Permutation>;

  struct EventInfo {
    int type = 1;
    int i = 0;
    int j = -1;  // type 2 only
    int a = 0;   // cell
    int b = -1;  // type 1 only
  };

  LatinTransversalProblem(ColorMatrix colors, int t) : colors_(std::move(colors)), t_(t), bundle_(make_spaces()) {
    if (t < 1) throw InputError("need at least one transversal");
    const int n = colors_.n();
    for (const auto& [c, cells] : colors_.color_classes())
      for (std::size_t x = 0; x < cells.size(); ++x)
        for (std::size_t y = x + 1; y < cells.size(); ++y) {
          const auto [r0, c0] = cells[x];
          const auto [r1, c1] = cells[y];
          if (r0 == r1 || c0 == c1) continue;  // impossible on one permutation
          pairs_.emplace_back(r0 * n + c0, r1 * n + c1);
        }
    std::sort(pairs_.begin(), pairs_.end());
    for (std::size_t k = 0; k < pairs_.size(); ++k) pair_index_.emplace(pair_key(pairs_[k].first, pairs_[k].second), static_cast<int>(k));

    // Per-space events: single cells first (index = cell), then the pairs.
    for (int s = 0; s < t_; ++s) {
      auto& sp = bundle_.space(s);
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) sp.add_event({{r, c}});
      for (const auto& [a, b] : pairs_) sp.add_event({{a / n, a % n}, {b / n, b % n}});
    }
    for (int i = 0; i < t_; ++i)
      for (int k = 0; k < num_pairs(); ++k) bundle_.add_event({{i, n * n + k}});
    for (int i = 0; i < t_; ++i)
      for (int j = i + 1; j < t_; ++j)
        for (int a = 0; a < n * n; ++a) bundle_.add_event({{i, a}, {j, a}});
  }

  const ColorMatrix& colors() const noexcept { return colors_; }
  int n() const noexcept { return colors_.n(); }
  int t() const noexcept { return t_; }
  int num_pairs() const noexcept { return static_cast<int>(pairs_.size()); }
  int num_type1() const noexcept { return t_ * num_pairs(); }
  const ProductBundle<PermutationSpace>& bundle() const noexcept { return bundle_; }

  // Resampling bundle interface.
  int num_events() const noexcept { return bundle_.num_events(); }
  State sample(Rng& rng) const { return bundle_.sample(rng); }
  bool holds(int e, const State& s) const { return bundle_.holds(e, s); }
  void resample(int e, State& s, Rng& rng) const { bundle_.resample(e, s, rng); }
  bool adjacent(int a, int b) const { return bundle_.adjacent(a, b); }

  std::vector<int> occurring(const State& s) const {
    const int n = this->n();
    std::vector<int> out;
    std::vector<std::pair<int, int>> by_color(static_cast<std::size_t>(n));
    for (int i = 0; i < t_; ++i) {
      const auto& pi = s[static_cast<std::size_t>(i)];
      for (int r = 0; r < n; ++r) {
        const int c = pi[static_cast<std::size_t>(r)];
        by_color[static_cast<std::size_t>(r)] = {colors_.at(r, c), r * n + c};
      }
      std::sort(by_color.begin(), by_color.end());
      for_each_same_group_pair(by_color, [&](int a, int b) {
        out.push_back(i * num_pairs() + pair_index_.at(pair_key(a, b)));
      });
    }
    int block = num_type1();
    for (int i = 0; i < t_; ++i)
      for (int j = i + 1; j < t_; ++j, block += n * n)
        for (int r = 0; r < n; ++r)
          if (s[static_cast<std::size_t>(i)][static_cast<std::size_t>(r)] == s[static_cast<std::size_t>(j)][static_cast<std::size_t>(r)])
            out.push_back(block + r * n + s[static_cast<std::size_t>(i)][static_cast<std::size_t>(r)]);
    std::sort(out.begin(), out.end());
    return out;
  }

  EventInfo info(int e) const {
    const auto& ev = bundle_.event(e);
    const int n2 = n() * n();
    EventInfo out;
    if (e < num_type1()) {
      const auto& pr = pairs_[static_cast<std::size_t>(ev[0].event - n2)];
      out.i = ev[0].space;
      out.a = pr.first;
      out.b = pr.second;
    } else {
      out.type = 2;
      out.i = ev[0].space;
      out.j = ev[1].space;
      out.a = ev[0].event;
    }
    return out;
  }

  double probability(int e) const {
    const double n = this->n();
    return e < num_type1() ? 1 / (n * (n - 1)) : 1 / (n * n);
  }

  std::vector<CliqueKey> clique_keys(int e) const {
    std::vector<CliqueKey> out;
    for (const auto& c : bundle_.event(e))
      for (int label : bundle_.space(c.space).labels(c.event)) out.push_back(CliqueKey{c.space} * 2 * n() + label);
    return out;
  }

  /// y_E = (8/7)^8 / (n(n-1)) for every event.
  AppCriterion criterion() const {
    const double n = this->n();
    std::vector<double> p(static_cast<std::size_t>(num_events()));
    for (int e = 0; e < num_events(); ++e) p[static_cast<std::size_t>(e)] = probability(e);
    std::vector<double> y(p.size(), std::pow(8.0 / 7.0, 8) / (n * (n - 1)));
    return make_app_criterion(std::move(p), std::move(y), [&](int e) { return clique_keys(e); });
  }

  DependencyGraph graph() const {
    return clique_graph(num_events(), [&](int e) { return clique_keys(e); });
  }

 private:
  std::vector<PermutationSpace> make_spaces() const {
    return std::vector<PermutationSpace>(static_cast<std::size_t>(t_), PermutationSpace(colors_.n()));
  }

  std::uint64_t pair_key(int a, int b) const {
    const auto n2 = static_cast<std::uint64_t>(n()) * static_cast<std::uint64_t>(n());
    return static_cast<std::uint64_t>(a) * n2 + static_cast<std::uint64_t>(b);
  }

  ColorMatrix colors_;
  int t_;
  ProductBundle<PermutationSpace> bundle_;
  std::vector<std::pair<int, int>> pairs_;
  std::unordered_map<std::uint64_t, int> pair_index_;
};

/// Independent check: t permutations, each rainbow, pairwise disjoint.
inline bool is_disjoint_rainbow_transversals(const ColorMatrix& a, int t, const std::vector<Permutation>& perms) {
  const int n = a.n();
  if (static_cast<int>(perms.size()) != t) return false;
  for (const auto& pi : perms) {
    if (static_cast<int>(pi.size()) != n) return false;
    std::vector<char> col(static_cast<std::size_t>(n), 0);
    std::unordered_map<int, int> seen;
    for (int r = 0; r < n; ++r) {
      const int c = pi[static_cast<std::size_t>(r)];
      if (c < 0 || c >= n || col[static_cast<std::size_t>(c)]) return false;
      col[static_cast<std::size_t>(c)] = 1;
      if (seen[a.at(r, c)]++) return false;
    }
  }
  for (std::size_t i = 0; i < perms.size(); ++i)
    for (std::size_t j = i + 1; j < perms.size(); ++j)
      for (int r = 0; r < n; ++r)
        if (perms[i][static_cast<std::size_t>(r)] == perms[j][static_cast<std::size_t>(r)]) return false;
  return true;
}

}  // namespace lll
