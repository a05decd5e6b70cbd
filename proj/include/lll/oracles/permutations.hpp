#pragma once

// Uniform random permutations of [n] with pattern events
// "pi(x_1) = y_1 and ... and pi(x_t) = y_t".

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "lll/error.hpp"
#include "lll/rng.hpp"

namespace lll {

using Permutation = std::vector<int>;

struct PatternPair {
  int x = 0;
  int y = 0;
  friend bool operator==(const PatternPair&, const PatternPair&) = default;
  friend auto operator<=>(const PatternPair&, const PatternPair&) = default;
};

/// Pairs sorted by domain element; domain and range elements are distinct.
using Pattern = std::vector<PatternPair>;

inline bool is_permutation(const Permutation& pi) {
  std::vector<char> seen(pi.size(), 0);
  for (int v : pi) {
    if (v < 0 || static_cast<std::size_t>(v) >= pi.size() || seen[static_cast<std::size_t>(v)]) return false;
    seen[static_cast<std::size_t>(v)] = 1;
  }
  return true;
}

inline Pattern normalize_pattern(Pattern pat, int n) {
  std::sort(pat.begin(), pat.end());
  for (std::size_t k = 0; k < pat.size(); ++k) {
    const auto& p = pat[k];
    if (p.x < 0 || p.x >= n || p.y < 0 || p.y >= n) throw InputError("pattern element out of range");
    for (std::size_t l = 0; l < k; ++l)
      if (pat[l].x == p.x || pat[l].y == p.y) throw InputError("pattern repeats a domain or range element");
  }
  return pat;
}

inline bool pattern_holds(const Pattern& pat, const Permutation& pi) {
  for (const auto& p : pat)
    if (pi[static_cast<std::size_t>(p.x)] != p.y) return false;
  return true;
}

/// Share a domain element or a range element.
inline bool patterns_overlap(const Pattern& a, const Pattern& b) {
  for (const auto& p : a)
    for (const auto& q : b)
      if (p.x == q.x || p.y == q.y) return true;
  return false;
}

/// Finishes a Fisher-Yates shuffle over the positions of `pat`: with the
/// domain elements in ascending order x_1 < ... < x_t, for i = t down to 1
/// swap pi(x_i) with pi(z), z uniform over [n] minus {x_1, ..., x_{i-1}}.
inline void permutation_resample(Permutation& pi, const Pattern& pat, Rng& rng) {
  if (!pattern_holds(pat, pi)) throw OracleError("permutation oracle called on a pattern that does not hold");
  const auto n = static_cast<std::uint64_t>(pi.size());
  for (std::size_t i = pat.size(); i-- > 0;) {
    // Index among the complement of the first i domain elements (sorted).
    std::uint64_t z = uniform_below(rng, n - i);
    for (std::size_t k = 0; k < i; ++k)
      if (static_cast<std::uint64_t>(pat[k].x) <= z) ++z;
    std::swap(pi[static_cast<std::size_t>(pat[i].x)], pi[static_cast<std::size_t>(z)]);
  }
}

inline Permutation random_permutation(int n, Rng& rng) {
  Permutation pi(static_cast<std::size_t>(n));
  std::iota(pi.begin(), pi.end(), 0);
  for (std::size_t i = pi.size(); i > 1; --i) std::swap(pi[i - 1], pi[uniform_below(rng, i)]);
  return pi;
}

class PermutationSpace {
 public:
  using State = Permutation;

  explicit PermutationSpace(int n) : n_(n) {
    if (n < 1) throw InputError("permutation size must be positive");
  }

  int size() const noexcept { return n_; }

  int add_event(Pattern pat) {
    events_.push_back(normalize_pattern(std::move(pat), n_));
    return num_events() - 1;
  }

  int num_events() const noexcept { return static_cast<int>(events_.size()); }
  const Pattern& event(int i) const { return events_.at(static_cast<std::size_t>(i)); }

  State sample(Rng& rng) const { return random_permutation(n_, rng); }

  bool holds(int i, const State& pi) const { return pattern_holds(event(i), pi); }

  void resample(int i, State& pi, Rng& rng) const {
    permutation_resample(pi, event(i), rng);
#ifdef LLL_CHECK_INVARIANTS
    if (!is_permutation(pi)) throw Error("permutation oracle produced a non-bijection");
#endif
  }

  bool adjacent(int i, int j) const { return i != j && patterns_overlap(event(i), event(j)); }

  /// Domain elements as 0..n-1, range elements as n..2n-1. Events sharing a
  /// label are adjacent and adjacent events share a label.
  std::vector<int> labels(int i) const {
    std::vector<int> out;
    for (const auto& p : event(i)) {
      out.push_back(p.x);
      out.push_back(n_ + p.y);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  /// (n - t)! / n! for a pattern of t pairs.
  double probability(int i) const {
    double r = 1;
    for (std::size_t k = 0; k < event(i).size(); ++k) r /= static_cast<double>(n_ - static_cast<int>(k));
    return r;
  }

 private:
  int n_;
  std::vector<Pattern> events_;
};

}  // namespace lll
