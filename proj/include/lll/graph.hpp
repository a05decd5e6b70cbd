#pragma once

// Dependency graphs on event indices, independent sets and stable set
// sequences.
//
// Sets of events come in two flavours. Index lists (sorted std::vector<int>)
// work for any n. Bitmasks (Mask) are used by the exponential machinery, which
// is only meaningful for small n anyway.

#include <algorithm>
#include <bit>
#include <concepts>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lll/error.hpp"

namespace lll {

using Mask = std::uint64_t;
using EventSet = std::vector<int>;

inline constexpr int kMaskBits = 64;
inline constexpr int kDefaultEnumerationCap = 25;

constexpr Mask bit(int i) noexcept { return Mask{1} << i; }
constexpr int lowest_bit(Mask m) noexcept { return std::countr_zero(m); }
constexpr int popcount(Mask m) noexcept { return std::popcount(m); }

/// Full set {0, ..., n-1} as a mask; n <= 64.
constexpr Mask full_mask(int n) noexcept {
  return n >= kMaskBits ? ~Mask{0} : bit(n) - 1;
}

inline Mask to_mask(std::span<const int> s) {
  Mask m = 0;
  for (int i : s) {
    if (i < 0 || i >= kMaskBits) throw std::out_of_range("event index does not fit a mask");
    m |= bit(i);
  }
  return m;
}

inline EventSet from_mask(Mask m) {
  EventSet out;
  while (m) {
    out.push_back(lowest_bit(m));
    m &= m - 1;
  }
  return out;
}

/// Undirected simple graph on events 0..n-1.
class DependencyGraph {
 public:
  DependencyGraph() = default;

  explicit DependencyGraph(int n) : adj_(static_cast<std::size_t>(check_n(n))) { refresh_masks(); }

  DependencyGraph(int n, std::span<const std::pair<int, int>> edges) : DependencyGraph(n) {
    for (auto [a, b] : edges) add_edge_unsorted(a, b);
    finalize();
  }

  static DependencyGraph empty(int n) { return DependencyGraph(n); }

  static DependencyGraph complete(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
    return DependencyGraph(n, e);
  }

  static DependencyGraph path(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return DependencyGraph(n, e);
  }

  int num_events() const noexcept { return static_cast<int>(adj_.size()); }
  int n() const noexcept { return num_events(); }

  /// Sorted open neighborhood of i.
  const std::vector<int>& neighbors(int i) const { return adj_.at(check_index(i)); }

  bool adjacent(int i, int j) const {
    check_index(i);
    check_index(j);
    if (i == j) return false;
    const auto& a = adj_[static_cast<std::size_t>(i)];
    return std::binary_search(a.begin(), a.end(), j);
  }

  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < n(); ++i)
      for (int j : adj_[static_cast<std::size_t>(i)])
        if (i < j) out.emplace_back(i, j);
    return out;
  }

  std::size_t num_edges() const {
    std::size_t d = 0;
    for (const auto& a : adj_) d += a.size();
    return d / 2;
  }

  bool fits_mask() const noexcept { return n() <= kMaskBits; }

  /// Closed neighborhood of i as a mask (requires n <= 64).
  Mask closed_mask(int i) const {
    require_mask();
    return closed_[static_cast<std::size_t>(check_index(i))];
  }

  Mask open_mask(int i) const { return closed_mask(i) & ~bit(i); }

  Mask closed_mask_of(Mask set) const {
    require_mask();
    Mask out = 0;
    for (Mask m = set; m; m &= m - 1) out |= closed_[static_cast<std::size_t>(lowest_bit(m))];
    return out;
  }

  bool is_independent_mask(Mask set) const {
    require_mask();
    for (Mask m = set; m; m &= m - 1) {
      const int i = lowest_bit(m);
      if (open_mask(i) & set) return false;
    }
    return true;
  }

 private:
  static int check_n(int n) {
    if (n < 0) throw InputError("negative event count");
    return n;
  }

  int check_index(int i) const {
    if (i < 0 || i >= n()) throw std::out_of_range("event index " + std::to_string(i) + " out of range");
    return i;
  }

  void require_mask() const {
    if (!fits_mask()) throw CapExceeded("mask operations need at most 64 events");
  }

  void add_edge_unsorted(int a, int b) {
    check_index(a);
    check_index(b);
    if (a == b) throw InputError("self-loop on event " + std::to_string(a));
    adj_[static_cast<std::size_t>(a)].push_back(b);
    adj_[static_cast<std::size_t>(b)].push_back(a);
  }

  void finalize() {
    for (auto& a : adj_) {
      std::sort(a.begin(), a.end());
      a.erase(std::unique(a.begin(), a.end()), a.end());
    }
    refresh_masks();
  }

  void refresh_masks() {
    closed_.clear();
    if (!fits_mask()) return;
    closed_.resize(adj_.size());
    for (std::size_t i = 0; i < adj_.size(); ++i) {
      Mask m = bit(static_cast<int>(i));
      for (int j : adj_[i]) m |= bit(j);
      closed_[i] = m;
    }
  }

  std::vector<std::vector<int>> adj_;
  std::vector<Mask> closed_;
};

/// Anything with num_events() and adjacent(i, j): explicit graphs and the
/// implicit graphs of large application instances alike.
template <class G>
concept AdjacencyStructure = requires(const G& g, int i) {
  { g.num_events() } -> std::convertible_to<int>;
  { g.adjacent(i, i) } -> std::convertible_to<bool>;
};

inline EventSet closed_neighborhood(const DependencyGraph& g, std::span<const int> set) {
  std::vector<char> in(static_cast<std::size_t>(g.n()), 0);
  for (int i : set) {
    in.at(static_cast<std::size_t>(i)) = 1;  // throws on out of range
    for (int j : g.neighbors(i)) in[static_cast<std::size_t>(j)] = 1;
  }
  EventSet out;
  for (int i = 0; i < g.n(); ++i)
    if (in[static_cast<std::size_t>(i)]) out.push_back(i);
  return out;
}

template <AdjacencyStructure G>
bool is_independent(const G& g, std::span<const int> set) {
  for (int i : set)
    if (i < 0 || i >= g.num_events()) throw std::out_of_range("event index out of range");
  for (std::size_t a = 0; a < set.size(); ++a)
    for (std::size_t b = a + 1; b < set.size(); ++b) {
      if (set[a] == set[b]) continue;
      if (g.adjacent(set[a], set[b])) return false;
    }
  return true;
}

/// All independent subsets of `within` (default: every vertex), ascending by
/// bitmask value.
inline std::vector<Mask> enumerate_independent_masks(const DependencyGraph& g, Mask within,
                                                     int cap = kDefaultEnumerationCap) {
  if (popcount(within) > cap) throw CapExceeded("independent-set enumeration over more than " +
                                                std::to_string(cap) + " events");
  std::vector<Mask> out{0};
  for (Mask m = within; m; m &= m - 1) {
    const int v = lowest_bit(m);
    const Mask nb = g.closed_mask(v);
    const std::size_t current = out.size();
    for (std::size_t k = 0; k < current; ++k)
      if ((out[k] & nb) == 0) out.push_back(out[k] | bit(v));
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<Mask> enumerate_independent_masks(const DependencyGraph& g,
                                                     int cap = kDefaultEnumerationCap) {
  if (g.n() > cap) throw CapExceeded("independent-set enumeration over " + std::to_string(g.n()) +
                                     " events exceeds cap " + std::to_string(cap));
  return enumerate_independent_masks(g, full_mask(g.n()), cap);
}

inline std::vector<EventSet> enumerate_independent_sets(const DependencyGraph& g,
                                                        int cap = kDefaultEnumerationCap) {
  std::vector<EventSet> out;
  for (Mask m : enumerate_independent_masks(g, cap)) out.push_back(from_mask(m));
  return out;
}

/// A sequence I_1, I_2, ... of event sets.
struct StableSetSequence {
  std::vector<EventSet> sets;

  std::size_t total_size() const {
    std::size_t s = 0;
    for (const auto& x : sets) s += x.size();
    return s;
  }

  bool proper() const {
    return std::none_of(sets.begin(), sets.end(), [](const EventSet& s) { return s.empty(); });
  }
};

/// True iff every set is independent, consecutive sets satisfy
/// I_{s+1} within the closed neighborhood of I_s, and the nonempty sets form a
/// prefix. Out-of-range indices make the sequence invalid rather than throw.
template <AdjacencyStructure G>
bool validate_sequence(const G& g, const StableSetSequence& seq) {
  const int n = g.num_events();
  bool seen_empty = false;
  for (std::size_t s = 0; s < seq.sets.size(); ++s) {
    const EventSet& cur = seq.sets[s];
    if (cur.empty()) {
      seen_empty = true;
      continue;
    }
    if (seen_empty) return false;
    for (int i : cur)
      if (i < 0 || i >= n) return false;
    EventSet sorted = cur;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
    if (!is_independent(g, std::span<const int>(sorted))) return false;
    if (s == 0) continue;
    const EventSet& prev = seq.sets[s - 1];
    for (int i : cur) {
      const bool covered = std::any_of(prev.begin(), prev.end(),
                                       [&](int j) { return j == i || g.adjacent(i, j); });
      if (!covered) return false;
    }
  }
  return true;
}

}  // namespace lll
