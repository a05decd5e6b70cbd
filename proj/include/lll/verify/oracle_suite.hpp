#pragma once

// Ready-made (R1)/(R2) checks for each built-in oracle family on spaces small
// enough to enumerate.

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lll/error.hpp"
#include "lll/oracles/matchings.hpp"
#include "lll/oracles/permutations.hpp"
#include "lll/oracles/spanning_trees.hpp"
#include "lll/oracles/variables.hpp"
#include "lll/synth.hpp"
#include "lll/verify/distribution.hpp"
#include "lll/verify/enumerate.hpp"

namespace lll {

struct EdgeMarginalReport {
  double expected = 0;
  double max_abs_z = 0;  // max over edges of |freq - expected| / binomial std. error
  bool pass = false;
};

struct OracleCheckReport {
  std::string family;
  int size = 0;
  int event = 0;
  int num_events = 0;
  std::uint64_t seed = 0;
  DistributionTestReport r1;
  std::uint64_t r2_trials = 0;
  std::uint64_t r2_violations = 0;
  std::optional<EdgeMarginalReport> edge_marginal;  // trees
  std::optional<bool> kernel_preserves_measure;     // synth, exact
  std::optional<std::size_t> kernel_r2_violations;  // synth, exhaustive

  bool pass() const {
    bool ok = r1.pass && r2_violations == 0;
    if (edge_marginal) ok = ok && edge_marginal->pass;
    if (kernel_preserves_measure) ok = ok && *kernel_preserves_measure;
    if (kernel_r2_violations) ok = ok && *kernel_r2_violations == 0;
    return ok;
  }
};

struct OracleCheckOptions {
  std::string family = "permutations";
  int size = 0;  // 0 picks the family default
  int event = 0;
  std::uint64_t samples = 1'000'000;
  std::uint64_t r2_trials = 1'000'000;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  double significance = kDefaultSignificance;
};

inline const std::vector<std::string>& oracle_families() {
  static const std::vector<std::string> f{"permutations", "matchings", "trees", "variables", "synth"};
  return f;
}

inline int default_family_size(const std::string& family) {
  if (family == "permutations") return 4;
  if (family == "matchings") return 6;
  if (family == "trees") return 5;
  if (family == "variables") return 2;
  if (family == "synth") return 3;
  throw InputError("unknown oracle family '" + family + "'");
}

/// The event lists used per family (size n):
///   permutations: {(0,0)}, {(1,2)}, {(0,1),(1,0)}, {(n-1,n-1)}
///   matchings (n vertices): {01}, {23}, {02,13}, and {45}, {14} when n >= 6
///   trees: {01}, {12}, {01,23} when n >= 4, {(n-2)(n-1)}
///   variables (n fair bits): {x_v = 0} for each v, then {x_0 = 1, x_{n-1} = 1}
///   synth: three variables with marginals (1/3,2/3), (1/4,3/4), (1/2,1/2);
///     events {x0=0, x1=0}, {x1=0}, {x2=0}; no dependency edges.
inline ExplicitSpace synth_demo_space() {
  using Pred = std::function<bool(const std::vector<int>&)>;
  std::vector<Pred> ev{[](const std::vector<int>& v) { return v[0] == 0 && v[1] == 0; },
                       [](const std::vector<int>& v) { return v[1] == 0; },
                       [](const std::vector<int>& v) { return v[2] == 0; }};
  const Rational third = Rational(1) / 3, quarter = Rational(1) / 4, half = Rational(1) / 2;
  return explicit_product_space({{third, 1 - third}, {quarter, 1 - quarter}, {half, half}}, ev, DependencyGraph(3));
}

namespace detail {

template <class B, class Index>
void run_checks(OracleCheckReport& rep, const B& b, std::span<const double> target, Index index,
                const OracleCheckOptions& opt, std::vector<std::uint64_t>* counts_out = nullptr) {
  if (rep.event < 0 || rep.event >= b.num_events()) throw InputError("event index out of range for this family");
  if (opt.samples == 0) throw InputError("samples must be positive");
  rep.num_events = b.num_events();
  auto counts = r1_counts_chunked(b, rep.event, target.size(), index, opt.samples, derive_seed(opt.seed, 1), opt.jobs);
  rep.r1 = chi_square_test(counts, target, opt.significance);
  rep.r2_trials = opt.r2_trials;
  rep.r2_violations = opt.r2_trials ? test_r2_chunked(b, rep.event, opt.r2_trials, derive_seed(opt.seed, 2), opt.jobs) : 0;
  if (counts_out) *counts_out = std::move(counts);
}

}  // namespace detail

inline OracleCheckReport check_oracle_family(const OracleCheckOptions& opt) {
  OracleCheckReport rep;
  rep.family = opt.family;
  rep.size = opt.size ? opt.size : default_family_size(opt.family);
  rep.event = opt.event;
  rep.seed = opt.seed;
  const int n = rep.size;

  if (opt.family == "permutations") {
    if (n < 3 || n > 7) throw InputError("permutations family supports sizes 3..7");
    PermutationSpace sp(n);
    sp.add_event({{0, 0}});
    sp.add_event({{1, 2}});
    sp.add_event({{0, 1}, {1, 0}});
    sp.add_event({{n - 1, n - 1}});
    const auto all = all_permutations(n);
    const auto target = all.uniform();
    detail::run_checks(rep, sp, target, [&](const Permutation& p) { return all.index(p); }, opt);
  } else if (opt.family == "matchings") {
    if (n < 4 || n > 12 || n % 2) throw InputError("matchings family supports even sizes 4..12");
    MatchingSpace sp(n / 2);
    sp.add_event({{0, 1}});
    sp.add_event({{2, 3}});
    sp.add_event({{0, 2}, {1, 3}});
    if (n >= 6) {
      sp.add_event({{4, 5}});
      sp.add_event({{1, 4}});
    }
    const auto all = all_perfect_matchings(n);
    const auto target = all.uniform();
    detail::run_checks(rep, sp, target, [&](const Matching& m) { return all.index(m); }, opt);
  } else if (opt.family == "trees") {
    if (n < 3 || n > 7) throw InputError("trees family supports sizes 3..7");
    TreeSpace sp(n);
    sp.add_event({{0, 1}});
    sp.add_event({{1, 2}});
    if (n >= 4) sp.add_event({{0, 1}, {2, 3}});
    sp.add_event({{n - 2, n - 1}});
    const auto all = all_spanning_trees(n);
    const auto target = all.uniform();
    std::vector<std::uint64_t> counts;
    detail::run_checks(rep, sp, target, [&](const SpanningTree& t) { return all.index(t.sorted_edges()); }, opt, &counts);
    // Edge marginals of the oracle output against 2/n.
    EdgeMarginalReport em;
    em.expected = 2.0 / n;
    std::vector<std::vector<std::uint64_t>> hits(static_cast<std::size_t>(n), std::vector<std::uint64_t>(static_cast<std::size_t>(n), 0));
    for (std::size_t k = 0; k < all.size(); ++k)
      for (auto [a, b] : all[k]) hits[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] += counts[k];
    const double se = binomial_std_error(em.expected, opt.samples);
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        const double f = static_cast<double>(hits[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]) / static_cast<double>(opt.samples);
        em.max_abs_z = std::max(em.max_abs_z, std::abs(f - em.expected) / se);
      }
    em.pass = em.max_abs_z <= 4;
    rep.edge_marginal = em;
  } else if (opt.family == "variables") {
    if (n < 1 || n > 16) throw InputError("variables family supports sizes 1..16");
    auto sp = VariableSpace::fair_bits(n);
    for (int v = 0; v < n; ++v) sp.add_event({{v, 0}});
    if (n >= 2) sp.add_event({{0, 1}, {n - 1, 1}});
    const auto all = all_assignments(sp.marginals());
    detail::run_checks(rep, sp, all.prob, [&](const std::vector<int>& s) { return all.states.index(s); }, opt);
  } else if (opt.family == "synth") {
    if (n != 3) throw InputError("synth family has a single built-in space of size 3");
    ExplicitSpaceBundle b(synth_demo_space());
    std::vector<double> target;
    for (const auto& p : b.space().prob()) target.push_back(to_double(p));
    detail::run_checks(rep, b, target, [](int s) { return static_cast<std::size_t>(s); }, opt);
    rep.kernel_preserves_measure = kernel_preserves_measure(b.space(), b.oracle(rep.event));
    rep.kernel_r2_violations = kernel_r2_violations(b.space(), b.oracle(rep.event));
  } else {
    throw InputError("unknown oracle family '" + opt.family + "'");
  }
  return rep;
}

}  // namespace lll
