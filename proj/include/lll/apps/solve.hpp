#pragma once

// Runs MaximalSetResample on an application instance, validates the result
// with the instance's independent checker and compares the resample count
// with the predicted bound.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "lll/apps/common.hpp"
#include "lll/apps/latin.hpp"
#include "lll/apps/rainbow_matching.hpp"
#include "lll/apps/rainbow_tree.hpp"
#include "lll/engine.hpp"

namespace lll {

struct PredictedBound {
  double t = 0;
  double no_slack = 0;
  double with_slack = 0;  // infinity when the instance has no slack
};

struct SolveReport {
  std::string problem;
  int num_events = 0;
  bool criterion_holds = false;
  double worst_ratio = 0;
  double epsilon = 0;
  std::vector<PredictedBound> bounds;
  RunLog log;
  bool valid = false;

  /// Resamples within the no-slack bound at confidence parameter t (the
  /// first entry of `bounds` whose t matches).
  bool within_bound(double t) const {
    for (const auto& b : bounds)
      if (b.t == t) return static_cast<double>(log.total_resamples) <= b.no_slack;
    throw InputError("no bound computed for that t");
  }
};

template <class Solution>
struct Solved {
  SolveReport report;
  Solution solution;
};

namespace detail {

template <class Problem, class Check>
Solved<typename Problem::State> solve_with(const Problem& problem, const std::string& name, const AppCriterion& crit,
                                           std::uint64_t seed, std::uint64_t budget, const std::vector<double>& ts,
                                           Check check) {
  EngineOptions opt;
  opt.max_resamples = budget;
  auto res = maximal_set_resample(problem, seed, opt);
  Solved<typename Problem::State> out{{}, std::move(res.state)};
  auto& rep = out.report;
  rep.problem = name;
  rep.num_events = problem.num_events();
  rep.criterion_holds = crit.cover.holds;
  rep.worst_ratio = crit.cover.worst_ratio;
  rep.epsilon = crit.cover.epsilon;
  for (double t : ts) rep.bounds.push_back({t, crit.bound(t), crit.bound_with_slack(t)});
  rep.log = std::move(res.log);
  rep.valid = rep.log.terminated && check(out.solution);
  return out;
}

}  // namespace detail

inline Solved<LatinTransversalProblem::State> solve(const LatinTransversalProblem& p, const AppCriterion& crit,
                                                    std::uint64_t seed, std::uint64_t budget,
                                                    const std::vector<double>& ts) {
  return detail::solve_with(p, "latin", crit, seed, budget, ts, [&](const std::vector<Permutation>& s) {
    return is_disjoint_rainbow_transversals(p.colors(), p.t(), s);
  });
}

inline Solved<RainbowMatchingProblem::State> solve(const RainbowMatchingProblem& p, const AppCriterion& crit,
                                                   std::uint64_t seed, std::uint64_t budget,
                                                   const std::vector<double>& ts) {
  return detail::solve_with(p, "rainbow-matching", crit, seed, budget, ts,
                            [&](const Matching& m) { return is_rainbow_perfect_matching(p.colors(), m); });
}

inline Solved<RainbowTreesProblem::State> solve(const RainbowTreesProblem& p, const AppCriterion& crit,
                                                std::uint64_t seed, std::uint64_t budget,
                                                const std::vector<double>& ts) {
  return detail::solve_with(p, "rainbow-tree", crit, seed, budget, ts, [&](const std::vector<SpanningTree>& s) {
    std::vector<EdgeList> trees;
    for (const auto& tr : s) trees.push_back(tr.sorted_edges());
    return is_disjoint_rainbow_trees(p.colors(), p.t(), trees);
  });
}

}  // namespace lll
