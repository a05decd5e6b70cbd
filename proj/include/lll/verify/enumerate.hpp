#pragma once

// Exhaustive enumeration of the small state spaces used as exact references
// in the oracle tests.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

#include "lll/error.hpp"
#include "lll/oracles/matchings.hpp"
#include "lll/oracles/permutations.hpp"
#include "lll/oracles/spanning_trees.hpp"

namespace lll {

/// States in a fixed order with a reverse lookup.
template <class Key>
class Enumeration {
 public:
  explicit Enumeration(std::vector<Key> keys) : keys_(std::move(keys)) {
    for (std::size_t k = 0; k < keys_.size(); ++k) index_.emplace(keys_[k], k);
    if (index_.size() != keys_.size()) throw Error("enumeration contains duplicates");
  }

  std::size_t size() const noexcept { return keys_.size(); }
  const Key& operator[](std::size_t k) const { return keys_[k]; }
  const std::vector<Key>& keys() const noexcept { return keys_; }

  /// Position of `key`, or size() when absent.
  std::size_t index(const Key& key) const {
    auto it = index_.find(key);
    return it == index_.end() ? keys_.size() : it->second;
  }

  std::vector<double> uniform() const { return std::vector<double>(keys_.size(), 1.0 / static_cast<double>(keys_.size())); }

 private:
  std::vector<Key> keys_;
  std::map<Key, std::size_t> index_;
};

inline Enumeration<Permutation> all_permutations(int n) {
  if (n > 9) throw CapExceeded("permutation enumeration limited to n <= 9");
  Permutation pi(static_cast<std::size_t>(n));
  std::iota(pi.begin(), pi.end(), 0);
  std::vector<Permutation> out;
  do out.push_back(pi);
  while (std::next_permutation(pi.begin(), pi.end()));
  return Enumeration<Permutation>(std::move(out));
}

namespace detail {

inline void extend_matchings(Matching& mate, std::vector<Matching>& out) {
  const auto it = std::find(mate.begin(), mate.end(), -1);
  if (it == mate.end()) {
    out.push_back(mate);
    return;
  }
  const int u = static_cast<int>(it - mate.begin());
  for (int v = u + 1; v < static_cast<int>(mate.size()); ++v) {
    if (mate[static_cast<std::size_t>(v)] != -1) continue;
    mate[static_cast<std::size_t>(u)] = v;
    mate[static_cast<std::size_t>(v)] = u;
    extend_matchings(mate, out);
    mate[static_cast<std::size_t>(u)] = mate[static_cast<std::size_t>(v)] = -1;
  }
}

}  // namespace detail

/// Perfect matchings of K_{vertices} as partner arrays.
inline Enumeration<Matching> all_perfect_matchings(int vertices) {
  if (vertices % 2 != 0 || vertices < 2) throw InputError("perfect matchings need a positive even vertex count");
  if (vertices > 14) throw CapExceeded("matching enumeration limited to 14 vertices");
  Matching mate(static_cast<std::size_t>(vertices), -1);
  std::vector<Matching> out;
  detail::extend_matchings(mate, out);
  return Enumeration<Matching>(std::move(out));
}

/// Spanning trees of K_n as sorted edge lists, one per Pruefer sequence.
inline Enumeration<EdgeList> all_spanning_trees(int n) {
  if (n < 1) throw InputError("tree enumeration needs a vertex");
  if (n > 8) throw CapExceeded("tree enumeration limited to n <= 8");
  std::vector<EdgeList> out;
  const int len = std::max(0, n - 2);
  std::vector<int> seq(static_cast<std::size_t>(len), 0);
  for (;;) {
    auto edges = decode_pruefer(seq, n);
    std::sort(edges.begin(), edges.end());
    out.push_back(std::move(edges));
    int k = len - 1;
    while (k >= 0 && seq[static_cast<std::size_t>(k)] == n - 1) seq[static_cast<std::size_t>(k--)] = 0;
    if (k < 0) break;
    ++seq[static_cast<std::size_t>(k)];
  }
  std::sort(out.begin(), out.end());
  return Enumeration<EdgeList>(std::move(out));
}

/// Value vectors of independent finite variables with their product
/// probabilities; variable 0 varies fastest.
struct ProductEnumeration {
  Enumeration<std::vector<int>> states;
  std::vector<double> prob;
};

inline ProductEnumeration all_assignments(const std::vector<std::vector<double>>& marginals) {
  std::size_t total = 1;
  for (const auto& m : marginals) {
    total *= m.size();
    if (total > (std::size_t{1} << 22)) throw CapExceeded("assignment enumeration too large");
  }
  std::vector<std::vector<int>> keys;
  std::vector<double> prob;
  std::vector<int> v(marginals.size(), 0);
  for (std::size_t s = 0; s < total; ++s) {
    std::size_t code = s;
    double p = 1;
    for (std::size_t k = 0; k < marginals.size(); ++k) {
      v[k] = static_cast<int>(code % marginals[k].size());
      code /= marginals[k].size();
      p *= marginals[k][static_cast<std::size_t>(v[k])];
    }
    keys.push_back(v);
    prob.push_back(p);
  }
  return {Enumeration<std::vector<int>>(std::move(keys)), std::move(prob)};
}

}  // namespace lll
