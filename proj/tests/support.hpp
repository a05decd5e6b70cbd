#pragma once

// Shared helpers for the test suites: random instances and brute-force
// reference computations that do not reuse the library's recursions.

#include <bit>
#include <cmath>
#include <random>
#include <utility>
#include <vector>

#include "lll/graph.hpp"
#include "lll/polynomials.hpp"
#include "lll/rational.hpp"

namespace lll::testing {

inline DependencyGraph random_graph(int n, double density, std::mt19937_64& rng) {
  std::vector<std::pair<int, int>> e;
  std::bernoulli_distribution coin(density);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng)) e.emplace_back(i, j);
  return DependencyGraph(n, e);
}

inline bool brute_independent(const DependencyGraph& g, Mask s) {
  for (int a = 0; a < g.n(); ++a)
    for (int b = a + 1; b < g.n(); ++b)
      if ((s >> a & 1) && (s >> b & 1) && g.adjacent(a, b)) return false;
  return true;
}

/// Alternating sum over independent I inside S of (-1)^|I| p^I.
template <class Scalar>
Scalar brute_breve(const DependencyGraph& g, const std::vector<Scalar>& p, Mask S) {
  Scalar total(0);
  for (Mask I = S;; I = (I - 1) & S) {
    if (brute_independent(g, I)) {
      Scalar term(1);
      for (int i = 0; i < g.n(); ++i)
        if (I >> i & 1) term *= p[static_cast<std::size_t>(i)];
      if (std::popcount(I) % 2) total -= term;
      else total += term;
    }
    if (I == 0) break;
  }
  return total;
}

/// Alternating sum over independent I containing S of (-1)^{|I \ S|} p^I.
template <class Scalar>
Scalar brute_q(const DependencyGraph& g, const std::vector<Scalar>& p, Mask S) {
  Scalar total(0);
  const Mask all = full_mask(g.n());
  for (Mask I = 0; I <= all; ++I) {
    if ((I & S) == S && brute_independent(g, I)) {
      Scalar term(1);
      for (int i = 0; i < g.n(); ++i)
        if (I >> i & 1) term *= p[static_cast<std::size_t>(i)];
      if (std::popcount(I & ~S) % 2) total -= term;
      else total += term;
    }
    if (I == all) break;
  }
  return total;
}

/// Random probability vector scaled down until p lies in the Shearer region of
/// g. Returns the vector as small dyadic rationals so
/// that the double and exact paths see identical inputs.
inline std::vector<double> random_region_point(const DependencyGraph& g, std::mt19937_64& rng, double max_p = 0.9) {
  std::uniform_real_distribution<double> U(0.01, max_p);
  std::vector<double> p(static_cast<std::size_t>(g.n()));
  for (auto& v : p) v = std::ldexp(std::round(std::ldexp(U(rng), 20)), -20);
  auto in_region = [&] { return PolynomialTable<double>(g, p).in_region(); };
  while (!in_region())
    for (auto& v : p) v = std::ldexp(std::round(std::ldexp(v * 0.8, 20)), -20);
  return p;
}

inline std::vector<Rational> to_rational(const std::vector<double>& v) {
  std::vector<Rational> out;
  for (double x : v) out.emplace_back(x);
  return out;
}

}  // namespace lll::testing
