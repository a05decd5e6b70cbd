#pragma once

// Shearer's independence polynomials, the GLL / cluster-expansion / Shearer
// criteria, automatic slack and the resample-count bounds that go with them.
//
//   breve_q(S) = sum over independent I inside S of (-1)^|I| p^I
//   q(I)       = p^I * breve_q([n] \ closed(I))       (I independent)
//
// Tables are exponential in n and meant for small graphs. Scalar is double or
// Rational; the rational path is the exact reference for the float one.

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <type_traits>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lll/error.hpp"
#include "lll/graph.hpp"
#include "lll/rational.hpp"

namespace lll {

inline constexpr double kIdentityTolerance = 1e-12;

struct RegionReport {
  bool in_region = true;
  double min_value = 1.0;       // smallest breve_q(S)
  Mask argmin = 0;
  std::size_t boundary_count = 0;  // |breve_q(S)| <= tolerance
};

template <class Scalar = double>
class PolynomialTable {
 public:
  PolynomialTable(const DependencyGraph& g, std::vector<Scalar> p, int cap = kDefaultEnumerationCap)
      : g_(g), p_(std::move(p)) {
    const int n = g_.n();
    if (static_cast<int>(p_.size()) != n) throw InputError("probability vector has wrong length");
    if (n > cap) throw CapExceeded("polynomial table over " + std::to_string(n) + " events exceeds cap " +
                                   std::to_string(cap));
    const std::size_t size = std::size_t{1} << n;
    breve_.resize(size);
    breve_[0] = Scalar(1);
    // Eliminate the lowest element of S: both right-hand sets are smaller masks.
    for (std::size_t s = 1; s < size; ++s) {
      const Mask S = s;
      const int a = lowest_bit(S);
      breve_[s] = breve_[S & ~bit(a)] - p_[static_cast<std::size_t>(a)] * breve_[S & ~g_.closed_mask(a)];
    }
    independent_ = enumerate_independent_masks(g_, cap);
    q_.reserve(independent_.size());
    const Mask all = full_mask(n);
    for (Mask I : independent_) q_.push_back(power(I) * breve_[all & ~g_.closed_mask_of(I)]);
  }

  const DependencyGraph& graph() const noexcept { return g_; }
  const std::vector<Scalar>& p() const noexcept { return p_; }
  int n() const noexcept { return g_.n(); }
  Mask all() const noexcept { return full_mask(n()); }

  const Scalar& breve(Mask S) const { return breve_.at(static_cast<std::size_t>(S)); }

  /// q_S; zero when S is not independent.
  Scalar q(Mask S) const {
    auto it = std::lower_bound(independent_.begin(), independent_.end(), S);
    if (it == independent_.end() || *it != S) return Scalar(0);
    return q_[static_cast<std::size_t>(it - independent_.begin())];
  }

  const Scalar& q_empty() const { return q_.front(); }

  const std::vector<Mask>& independent_sets() const noexcept { return independent_; }
  const std::vector<Scalar>& q_values() const noexcept { return q_; }

  /// p^I = product of p_i over i in I.
  Scalar power(Mask I) const {
    Scalar r(1);
    for (Mask m = I; m; m &= m - 1) r *= p_[static_cast<std::size_t>(lowest_bit(m))];
    return r;
  }

  RegionReport region(double tolerance = kIdentityTolerance) const {
    RegionReport rep;
    rep.min_value = to_double(breve_[0]);
    for (std::size_t s = 0; s < breve_.size(); ++s) {
      const double v = to_double(breve_[s]);
      if (breve_[s] <= Scalar(0)) rep.in_region = false;
      if (std::fabs(v) <= tolerance) ++rep.boundary_count;
      if (v < rep.min_value) {
        rep.min_value = v;
        rep.argmin = s;
      }
    }
    return rep;
  }

  bool in_region() const {
    return std::all_of(breve_.begin(), breve_.end(), [](const Scalar& v) { return v > Scalar(0); });
  }

  /// q_{i} / q_empty, via breve_q([n] - i) / breve_q([n]) - 1.
  Scalar singleton_ratio(int i) const {
    if (i < 0 || i >= n()) throw std::out_of_range("event index out of range");
    const Scalar& full = breve_[all()];
    if (full == Scalar(0)) throw Error("singleton ratio undefined: q_empty is zero");
    return breve_[all() & ~bit(i)] / full - Scalar(1);
  }

  Scalar singleton_sum() const {
    Scalar s(0);
    for (int i = 0; i < n(); ++i) s += q(bit(i));
    return s;
  }

 private:
  DependencyGraph g_;
  std::vector<Scalar> p_;
  std::vector<Scalar> breve_;
  std::vector<Mask> independent_;
  std::vector<Scalar> q_;
};

template <class Scalar>
bool in_shearer_region(const PolynomialTable<Scalar>& t) {
  return t.in_region();
}

/// Slack that every interior point of the Shearer region admits:
/// q_empty / (2 * sum_i q_{i}). Infinite when no event has positive mass.
template <class Scalar>
Scalar shearer_slack(const PolynomialTable<Scalar>& t) {
  if (!t.in_region()) throw Error("shearer_slack requires a point inside the Shearer region");
  const Scalar s = t.singleton_sum();
  if (s == Scalar(0)) {
    if constexpr (std::is_same_v<Scalar, double>) return std::numeric_limits<double>::infinity();
    else throw Error("slack is unbounded: all probabilities are zero");
  }
  return t.q_empty() / (Scalar(2) * s);
}

template <class Scalar>
std::vector<Scalar> scaled(const std::vector<Scalar>& p, const Scalar& factor) {
  std::vector<Scalar> out(p);
  for (auto& v : out) v *= factor;
  return out;
}

// ---------------------------------------------------------------------------
// Sums over independent subsets of a vertex list, for graphs of any size.

/// sum over independent I inside `vertices` of prod_{i in I} (sign * w_i).
/// sign = -1 gives breve_q restricted to the list; sign = +1 gives Y.
template <AdjacencyStructure G, class Scalar>
Scalar independent_subset_sum(const G& g, std::span<const int> vertices, std::span<const Scalar> w,
                              int sign, int cap = kDefaultEnumerationCap) {
  const int k = static_cast<int>(vertices.size());
  if (k > cap) throw CapExceeded("independent-subset sum over " + std::to_string(k) + " events exceeds cap " +
                                 std::to_string(cap));
  std::vector<Mask> closed(static_cast<std::size_t>(k));
  for (int a = 0; a < k; ++a) {
    Mask m = bit(a);
    for (int b = 0; b < k; ++b)
      if (b != a && g.adjacent(vertices[static_cast<std::size_t>(a)], vertices[static_cast<std::size_t>(b)]))
        m |= bit(b);
    closed[static_cast<std::size_t>(a)] = m;
  }
  std::unordered_map<Mask, Scalar> memo;
  // Y_S = Y_{S-a} + w_a Y_{S \ closed(a)}, recursing on the lowest element.
  auto rec = [&](auto&& self, Mask S) -> Scalar {
    if (S == 0) return Scalar(1);
    if (auto it = memo.find(S); it != memo.end()) return it->second;
    const int a = lowest_bit(S);
    Scalar wa = w[static_cast<std::size_t>(vertices[static_cast<std::size_t>(a)])];
    if (sign < 0) wa = -wa;
    Scalar r = self(self, S & ~bit(a)) + wa * self(self, S & ~closed[static_cast<std::size_t>(a)]);
    memo.emplace(S, r);
    return r;
  };
  return rec(rec, full_mask(k));
}

// ---------------------------------------------------------------------------
// Criteria.

/// p_i <= x_i * prod_{j in Gamma(i)} (1 - x_j) for every i, up to `tolerance`.
template <class Scalar>
bool check_gll(const DependencyGraph& g, const std::vector<Scalar>& p, const std::vector<Scalar>& x,
               const Scalar& tolerance = Scalar(0)) {
  const int n = g.n();
  if (static_cast<int>(p.size()) != n || static_cast<int>(x.size()) != n)
    throw InputError("criterion vectors have wrong length");
  for (int i = 0; i < n; ++i) {
    Scalar rhs = x[static_cast<std::size_t>(i)];
    for (int j : g.neighbors(i)) rhs *= Scalar(1) - x[static_cast<std::size_t>(j)];
    if (p[static_cast<std::size_t>(i)] > rhs + tolerance) return false;
  }
  return true;
}

/// Y_{closed(i)} = sum over independent I inside Gamma+(i) of y^I.
template <class Scalar>
Scalar closed_neighborhood_y(const DependencyGraph& g, const std::vector<Scalar>& y, int i,
                             int cap = kDefaultEnumerationCap) {
  std::vector<int> nb{i};
  for (int j : g.neighbors(i)) nb.push_back(j);
  std::sort(nb.begin(), nb.end());
  return independent_subset_sum(g, std::span<const int>(nb), std::span<const Scalar>(y), +1, cap);
}

/// p_i * Y_{Gamma+(i)} <= y_i for every i, up to `tolerance`.
template <class Scalar>
bool check_cll(const DependencyGraph& g, const std::vector<Scalar>& p, const std::vector<Scalar>& y,
               const Scalar& tolerance = Scalar(0), int cap = kDefaultEnumerationCap) {
  const int n = g.n();
  if (static_cast<int>(p.size()) != n || static_cast<int>(y.size()) != n)
    throw InputError("criterion vectors have wrong length");
  for (int i = 0; i < n; ++i) {
    const Scalar Y = closed_neighborhood_y(g, y, i, cap);
    if (p[static_cast<std::size_t>(i)] * Y > y[static_cast<std::size_t>(i)] + tolerance) return false;
  }
  return true;
}

/// Y_S for every subset S (n small). Same recursion as breve_q with p = -y.
template <class Scalar>
std::vector<Scalar> y_table(const DependencyGraph& g, const std::vector<Scalar>& y,
                            int cap = kDefaultEnumerationCap) {
  if (g.n() > cap) throw CapExceeded("Y table exceeds cap");
  std::vector<Scalar> out(std::size_t{1} << g.n());
  out[0] = Scalar(1);
  for (std::size_t s = 1; s < out.size(); ++s) {
    const int a = lowest_bit(s);
    out[s] = out[s & ~bit(a)] + y[static_cast<std::size_t>(a)] * out[s & ~g.closed_mask(a)];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Stable set sequence masses.

/// Sum of p_I over proper stable set sequences whose first set is J and whose
/// total size is at most `budget`. Memoized on (first set, remaining budget).
template <class Scalar = double>
Scalar sequence_mass(const DependencyGraph& g, const std::vector<Scalar>& p, Mask J, int budget,
                     std::size_t state_cap = 5'000'000, int cap = kDefaultEnumerationCap) {
  if (J == 0) return Scalar(1);
  if (!g.is_independent_mask(J)) throw InputError("sequence_mass: first set is not independent");
  if (budget < 0) throw InputError("negative budget");
  const auto ind = enumerate_independent_masks(g, cap);
  if (ind.size() * static_cast<std::size_t>(budget + 1) > state_cap)
    throw CapExceeded("sequence_mass: budget too large to enumerate");
  std::map<std::pair<Mask, int>, Scalar> memo;
  auto weight = [&](Mask I) {
    Scalar r(1);
    for (Mask m = I; m; m &= m - 1) r *= p[static_cast<std::size_t>(lowest_bit(m))];
    return r;
  };
  auto rec = [&](auto&& self, Mask I, int b) -> Scalar {
    const int sz = popcount(I);
    if (sz > b) return Scalar(0);
    if (auto it = memo.find({I, b}); it != memo.end()) return it->second;
    const Mask reach = g.closed_mask_of(I);
    Scalar tail(1);
    const int rest = b - sz;
    if (rest > 0)
      for (Mask next : ind)
        if (next != 0 && (next & ~reach) == 0 && popcount(next) <= rest) tail += self(self, next, rest);
    Scalar r = weight(I) * tail;
    memo.emplace(std::make_pair(I, b), r);
    return r;
  };
  return rec(rec, J, budget);
}

/// Sum of p_I over proper stable set sequences with exactly `length` sets.
template <class Scalar = double>
Scalar proper_mass_by_length(const DependencyGraph& g, const std::vector<Scalar>& p, int length,
                             int cap = kDefaultEnumerationCap) {
  if (length <= 0) return Scalar(length == 0 ? 1 : 0);
  const auto ind = enumerate_independent_masks(g, cap);
  // cur[k] = total mass of sequences of the current length ending in ind[k].
  std::vector<Scalar> cur(ind.size(), Scalar(0)), next(ind.size());
  auto weight = [&](Mask I) {
    Scalar r(1);
    for (Mask m = I; m; m &= m - 1) r *= p[static_cast<std::size_t>(lowest_bit(m))];
    return r;
  };
  for (std::size_t k = 1; k < ind.size(); ++k) cur[k] = weight(ind[k]);
  for (int len = 2; len <= length; ++len) {
    std::fill(next.begin(), next.end(), Scalar(0));
    for (std::size_t a = 1; a < ind.size(); ++a) {
      if (cur[a] == Scalar(0)) continue;
      const Mask reach = g.closed_mask_of(ind[a]);
      for (std::size_t b = 1; b < ind.size(); ++b)
        if ((ind[b] & ~reach) == 0) next[b] += cur[a] * weight(ind[b]);
    }
    std::swap(cur, next);
  }
  Scalar total(0);
  for (const auto& v : cur) total += v;
  return total;
}

// ---------------------------------------------------------------------------
// Resample-count bounds: each returns s with Pr[more than s resamples] <= e^-t.

namespace bounds {

inline double sum_log_inv_one_minus(std::span<const double> x) {
  double s = 0;
  for (double v : x) s += -std::log1p(-v);
  return s;
}

inline double sum_log_one_plus(std::span<const double> y) {
  double s = 0;
  for (double v : y) s += std::log1p(v);
  return s;
}

/// GLL with p_i <= (1 - eps) x_i prod (1 - x_j).
inline double gll_with_slack(std::span<const double> x, double eps, double t) {
  return (t + sum_log_inv_one_minus(x)) / eps;
}

/// GLL without slack.
inline double lovasz_no_slack(std::span<const double> x, double t) {
  double r = 0;
  for (double v : x) r += v / (1 - v);
  return 4 * r * (sum_log_inv_one_minus(x) + 1 + t);
}

/// GLL with (1 + eps) p_i <= x_i prod (1 - x_j).
inline double lovasz_with_slack(std::span<const double> x, double eps, double t) {
  return 2 / eps * (sum_log_inv_one_minus(x) + t);
}

/// Shearer at slack eps, where q0_scaled = q_empty((1 + eps) p).
inline double shearer_with_slack(double q0_scaled, double eps, double t) {
  return 2 / eps * (std::log(1 / q0_scaled) + t);
}

/// Shearer without slack, from the ratios q_{i} / q_empty.
inline double shearer_no_slack(std::span<const double> ratios, double t) {
  double r = 0;
  for (double v : ratios) r += v;
  return 4 * r * (sum_log_one_plus(ratios) + 1 + t);
}

inline double cll_no_slack(std::span<const double> y, double t) {
  double r = 0;
  for (double v : y) r += v;
  return 4 * r * (sum_log_one_plus(y) + 1 + t);
}

/// CLL with (1 + eps) p_i <= y_i / Y_{Gamma+(i)}.
inline double cll_with_slack(std::span<const double> y, double eps, double t) {
  return 2 / eps * (sum_log_one_plus(y) + t);
}

}  // namespace bounds

enum class CriterionKind { kGLL, kCLL, kShearer };

inline const char* to_string(CriterionKind k) {
  switch (k) {
    case CriterionKind::kGLL: return "GLL";
    case CriterionKind::kCLL: return "CLL";
    case CriterionKind::kShearer: return "Shearer";
  }
  return "?";
}

struct CriterionParams {
  CriterionKind kind = CriterionKind::kShearer;
  std::vector<double> x;  // GLL
  std::vector<double> y;  // CLL
  double epsilon = 0;     // slack; 0 selects the no-slack bound
};

/// Predicted resample threshold for `params`, after checking that the
/// criterion actually holds (throws Error on mismatch).
///
/// GLL with eps > 0 uses the form p <= (1 - eps) x prod(1 - x); CLL and
/// Shearer with eps > 0 use (1 + eps) p.
inline double predicted_bound(const CriterionParams& params, const DependencyGraph& g,
                              const std::vector<double>& p, double t) {
  const int n = g.n();
  if (static_cast<int>(p.size()) != n) throw InputError("probability vector has wrong length");
  if (params.epsilon < 0 || params.epsilon >= 1) throw InputError("slack must lie in [0, 1)");
  const double eps = params.epsilon;
  switch (params.kind) {
    case CriterionKind::kGLL: {
      if (static_cast<int>(params.x.size()) != n) throw InputError("x has wrong length");
      if (eps > 0) {
        if (!check_gll(g, scaled(p, 1 / (1 - eps)), params.x)) throw Error("criterion mismatch: GLL with slack fails");
        return bounds::gll_with_slack(params.x, eps, t);
      }
      if (!check_gll(g, p, params.x)) throw Error("criterion mismatch: GLL fails");
      return bounds::lovasz_no_slack(params.x, t);
    }
    case CriterionKind::kCLL: {
      if (static_cast<int>(params.y.size()) != n) throw InputError("y has wrong length");
      if (!check_cll(g, scaled(p, 1 + eps), params.y)) throw Error("criterion mismatch: CLL fails");
      return eps > 0 ? bounds::cll_with_slack(params.y, eps, t) : bounds::cll_no_slack(params.y, t);
    }
    case CriterionKind::kShearer: {
      if (eps > 0) {
        PolynomialTable<double> scaled_table(g, scaled(p, 1 + eps));
        if (!scaled_table.in_region()) throw Error("criterion mismatch: (1+eps)p outside the Shearer region");
        return bounds::shearer_with_slack(scaled_table.q_empty(), eps, t);
      }
      PolynomialTable<double> table(g, p);
      if (!table.in_region()) throw Error("criterion mismatch: p outside the Shearer region");
      std::vector<double> ratios;
      for (int i = 0; i < n; ++i) ratios.push_back(table.singleton_ratio(i));
      return bounds::shearer_no_slack(ratios, t);
    }
  }
  throw Error("unknown criterion");
}

}  // namespace lll
