#pragma once

// Edge-colored complete graphs and color matrices, with generators that
// respect a multiplicity cap.

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

#include "lll/error.hpp"
#include "lll/oracles/matchings.hpp"
#include "lll/rng.hpp"

namespace lll {

/// Coloring of the edges of K_n; color(u, v) == color(v, u).
class ColoredCompleteGraph {
 public:
  explicit ColoredCompleteGraph(int n) : n_(n), color_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), -1) {
    if (n < 1) throw InputError("colored graph needs a vertex");
  }

  int n() const noexcept { return n_; }

  int color(int u, int v) const { return color_[idx(u, v)]; }
  int color(const Edge& e) const { return color(e.first, e.second); }

  void set_color(int u, int v, int c) {
    if (u == v) throw InputError("no color on a loop");
    if (c < 0) throw InputError("colors are nonnegative");
    color_[idx(u, v)] = c;
    color_[idx(v, u)] = c;
  }

  bool complete() const {
    for (int u = 0; u < n_; ++u)
      for (int v = u + 1; v < n_; ++v)
        if (color(u, v) < 0) return false;
    return true;
  }

  /// Edges of each color, ascending; colors in ascending order.
  std::map<int, EdgeList> color_classes() const {
    std::map<int, EdgeList> out;
    for (int u = 0; u < n_; ++u)
      for (int v = u + 1; v < n_; ++v) out[color(u, v)].emplace_back(u, v);
    return out;
  }

  int max_multiplicity() const {
    std::size_t m = 0;
    for (const auto& [c, edges] : color_classes()) m = std::max(m, edges.size());
    return static_cast<int>(m);
  }

 private:
  std::size_t idx(int u, int v) const {
    if (u < 0 || v < 0 || u >= n_ || v >= n_) throw std::out_of_range("vertex out of range");
    return static_cast<std::size_t>(u) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(v);
  }

  int n_;
  std::vector<int> color_;
};

/// Square matrix of color ids.
class ColorMatrix {
 public:
  explicit ColorMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0) {
    if (n < 1) throw InputError("color matrix needs a row");
  }

  int n() const noexcept { return n_; }
  int at(int row, int col) const { return a_[idx(row, col)]; }
  void set(int row, int col, int c) {
    if (c < 0) throw InputError("colors are nonnegative");
    a_[idx(row, col)] = c;
  }

  /// Cells (row, col) of each color, row-major order.
  std::map<int, std::vector<std::pair<int, int>>> color_classes() const {
    std::map<int, std::vector<std::pair<int, int>>> out;
    for (int r = 0; r < n_; ++r)
      for (int c = 0; c < n_; ++c) out[at(r, c)].emplace_back(r, c);
    return out;
  }

  int max_multiplicity() const {
    std::size_t m = 0;
    for (const auto& [c, cells] : color_classes()) m = std::max(m, cells.size());
    return static_cast<int>(m);
  }

 private:
  std::size_t idx(int r, int c) const {
    if (r < 0 || c < 0 || r >= n_ || c >= n_) throw std::out_of_range("cell out of range");
    return static_cast<std::size_t>(r) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(c);
  }

  int n_;
  std::vector<int> a_;
};

namespace detail {

/// A uniformly shuffled list of `count` labels, each label used `cap` times
/// except possibly the last.
inline std::vector<int> capped_labels(std::size_t count, int cap, Rng& rng) {
  if (cap < 1) throw InputError("multiplicity cap must be positive");
  std::vector<int> labels(count);
  for (std::size_t k = 0; k < count; ++k) labels[k] = static_cast<int>(k / static_cast<std::size_t>(cap));
  for (std::size_t k = labels.size(); k > 1; --k) std::swap(labels[k - 1], labels[uniform_below(rng, k)]);
  return labels;
}

}  // namespace detail

/// Uniformly random coloring of K_n in which every color class has exactly
/// `cap` edges (the last class may be smaller).
inline ColoredCompleteGraph random_capped_coloring(int n, int cap, Rng& rng) {
  ColoredCompleteGraph g(n);
  const std::size_t m = static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2;
  const auto labels = detail::capped_labels(m, cap, rng);
  std::size_t k = 0;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) g.set_color(u, v, labels[k++]);
  return g;
}

/// Proper (2n - 1)-edge-coloring of K_{2n} by the round-robin
/// 1-factorization: each color class is a perfect matching.
inline ColoredCompleteGraph round_robin_coloring(int vertices) {
  if (vertices < 2 || vertices % 2 != 0) throw InputError("round-robin coloring needs an even vertex count");
  ColoredCompleteGraph g(vertices);
  const int m = vertices - 1;
  for (int r = 0; r < m; ++r) {
    g.set_color(r, m, r);
    for (int k = 1; k <= (vertices - 2) / 2; ++k) g.set_color((r + k) % m, ((r - k) % m + m) % m, r);
  }
  return g;
}

/// Uniformly random matrix in which every color appears exactly `cap` times
/// (the last color may appear fewer times).
inline ColorMatrix random_capped_matrix(int n, int cap, Rng& rng) {
  ColorMatrix a(n);
  const auto labels = detail::capped_labels(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), cap, rng);
  std::size_t k = 0;
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) a.set(r, c, labels[k++]);
  return a;
}

}  // namespace lll
