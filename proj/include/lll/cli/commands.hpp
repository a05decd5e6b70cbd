#pragma once

// The command-line subcommands as functions from parsed inputs to a JSON
// document and an exit code. The executable only parses flags and prints.

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lll/apps/solve.hpp"
#include "lll/detail/parallel.hpp"
#include "lll/io/json.hpp"
#include "lll/polynomials.hpp"
#include "lll/synth.hpp"
#include "lll/verify/chain_streak.hpp"
#include "lll/verify/oracle_suite.hpp"

namespace lll::cli {

using io::Json;

enum ExitCode : int {
  kSuccess = 0,
  kValidationFailure = 1,
  kBudgetExhausted = 2,
  kInputFailure = 3,
};

struct Options {
  std::optional<std::uint64_t> seed;  // falls back to the instance seed, then 1
  std::uint64_t budget = 1'000'000;
  std::uint64_t samples = 1'000'000;
  std::uint64_t repeat = 1;
  bool exact = false;
  unsigned jobs = 1;
};

struct Outcome {
  Json json;
  int exit_code = kSuccess;
};

/// Tail parameters reported by `criteria`.
inline std::vector<double> criteria_tails() { return {1.0, std::log(1e4)}; }

/// Tail parameters reported by solver runs.
inline std::vector<double> run_tails() { return {1.0, std::log(20.0), std::log(100.0), std::log(1e4)}; }

namespace detail {

inline std::vector<double> to_doubles(const std::vector<Rational>& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& r : v) out.push_back(to_double(r));
  return out;
}

inline Json strings(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const auto& r : v) out.push_back(to_string(r));
  return out;
}

inline Json optional_bool(const std::optional<bool>& b) { return b ? Json(*b) : Json(nullptr); }

}  // namespace detail

// ---------------------------------------------------------------------------
// criteria

/// Verdicts, Shearer quantities and predicted bounds for an explicit graph.
inline Json criteria_report(const DependencyGraph& g, const std::vector<Rational>& pr,
                            const std::optional<std::vector<Rational>>& xr,
                            const std::optional<std::vector<Rational>>& yr, bool exact) {
  const int n = g.n();
  const auto p = detail::to_doubles(pr);
  std::optional<bool> gll, cll;
  std::vector<double> x, y;
  if (xr) {
    x = detail::to_doubles(*xr);
    gll = exact ? check_gll<Rational>(g, pr, *xr) : check_gll(g, p, x);
  } else if (n == 0) {
    gll = true;
  }
  if (yr) {
    y = detail::to_doubles(*yr);
    cll = exact ? check_cll<Rational>(g, pr, *yr) : check_cll(g, p, y);
  } else if (n == 0) {
    cll = true;
  }

  PolynomialTable<double> table(g, p);
  bool shearer = table.in_region();
  Json exact_block;
  if (exact) {
    PolynomialTable<Rational> rt(g, pr);
    shearer = rt.in_region();
    exact_block["q0"] = to_string(rt.q_empty());
    exact_block["shearer"] = shearer;
    if (rt.q_empty() != 0) {
      std::vector<Rational> ratios;
      for (int i = 0; i < n; ++i) ratios.push_back(rt.singleton_ratio(i));
      exact_block["singleton_ratios"] = detail::strings(ratios);
    } else {
      exact_block["singleton_ratios"] = nullptr;
    }
  }

  Json out;
  out["n"] = n;
  out["gll"] = detail::optional_bool(gll);
  out["cll"] = detail::optional_bool(cll);
  out["shearer"] = shearer;
  out["q0"] = table.q_empty();
  out["slack_kind"] = "shearer";
  std::vector<double> ratios;
  if (table.q_empty() != 0) {
    for (int i = 0; i < n; ++i) ratios.push_back(table.singleton_ratio(i));
    out["singleton_ratios"] = ratios;
  } else {
    out["singleton_ratios"] = nullptr;
  }
  double slack = std::numeric_limits<double>::quiet_NaN();
  if (shearer) slack = shearer_slack(table);
  out["slack"] = io::number_or_null(slack);
  double scaled_q0 = std::numeric_limits<double>::quiet_NaN();
  if (shearer && std::isfinite(slack)) scaled_q0 = PolynomialTable<double>(g, scaled(p, 1 + slack)).q_empty();

  Json bounds = Json::array();
  for (double t : criteria_tails()) {
    Json b;
    b["t"] = t;
    b["gll"] = gll && *gll && (xr || n == 0) ? io::number_or_null(bounds::lovasz_no_slack(x, t)) : Json(nullptr);
    b["cll"] = cll && *cll && (yr || n == 0) ? io::number_or_null(bounds::cll_no_slack(y, t)) : Json(nullptr);
    b["shearer"] = shearer ? io::number_or_null(bounds::shearer_no_slack(ratios, t)) : Json(nullptr);
    b["shearer_with_slack"] =
        std::isfinite(scaled_q0) ? io::number_or_null(bounds::shearer_with_slack(scaled_q0, slack, t)) : Json(nullptr);
    bounds.push_back(b);
  }
  out["predicted_bounds"] = bounds;
  if (exact) out["exact"] = exact_block;
  return out;
}

/// Cluster-expansion verdict of an application instance from its clique
/// cover; no Shearer quantities (too many events to enumerate).
inline Json app_criteria_report(const AppCriterion& c, int n) {
  Json out;
  out["n"] = n;
  out["gll"] = nullptr;
  out["cll"] = c.cover.holds;
  out["shearer"] = nullptr;
  out["q0"] = nullptr;
  out["singleton_ratios"] = nullptr;
  out["slack_kind"] = "cll";
  out["slack"] = io::number_or_null(c.cover.epsilon);
  out["cll_worst_ratio"] = c.cover.worst_ratio;
  Json bounds = Json::array();
  for (double t : criteria_tails()) {
    Json b;
    b["t"] = t;
    b["gll"] = nullptr;
    b["cll"] = c.cover.holds ? io::number_or_null(c.bound(t)) : Json(nullptr);
    b["cll_with_slack"] = io::number_or_null(c.bound_with_slack(t));
    b["shearer"] = nullptr;
    b["shearer_with_slack"] = nullptr;
    bounds.push_back(b);
  }
  out["predicted_bounds"] = bounds;
  return out;
}

inline Outcome cmd_criteria(const io::Instance& inst, const Options& opt) {
  Outcome o;
  if (const auto* c = std::get_if<io::CustomGraphInstance>(&inst.payload)) {
    o.json = criteria_report(c->graph, c->p, c->x, c->y, opt.exact);
  } else if (const auto* e = std::get_if<io::ExplicitSpaceInstance>(&inst.payload)) {
    std::vector<Rational> p;
    for (int i = 0; i < e->space.num_events(); ++i) p.push_back(e->space.probability(i));
    o.json = criteria_report(e->space.graph(), p, e->x, e->y, opt.exact);
    Json feasible = Json::array();
    for (int i = 0; i < e->space.num_events(); ++i)
      feasible.push_back(p[static_cast<std::size_t>(i)] == 0 ? true : check_lopsided_association(e->space, i));
    o.json["oracle_exists"] = feasible;
  } else if (const auto* l = std::get_if<io::LatinInstance>(&inst.payload)) {
    LatinTransversalProblem prob(l->matrix, l->t);
    o.json = app_criteria_report(prob.criterion(), prob.num_events());
  } else if (const auto* m = std::get_if<io::RainbowMatchingInstance>(&inst.payload)) {
    RainbowMatchingProblem prob(m->coloring);
    o.json = app_criteria_report(prob.criterion(), prob.num_events());
  } else if (const auto* r = std::get_if<io::RainbowTreeInstance>(&inst.payload)) {
    RainbowTreesProblem prob(r->coloring, r->t);
    o.json = app_criteria_report(prob.criterion(), prob.num_events());
  }
  o.json["kind"] = inst.kind;
  return o;
}

// ---------------------------------------------------------------------------
// run

namespace detail {

inline int exit_code_for(bool terminated, bool valid) {
  if (!terminated) return kBudgetExhausted;
  return valid ? kSuccess : kValidationFailure;
}

// Bounds are only meaningful when the criterion holds; otherwise null.
inline Json bounds_json(const std::vector<PredictedBound>& bounds, const RunLog& log, bool holds) {
  Json out = Json::array();
  for (const auto& b : bounds) {
    if (!holds) {
      out.push_back({{"t", b.t}, {"no_slack", nullptr}, {"with_slack", nullptr}, {"within_no_slack", nullptr}});
      continue;
    }
    out.push_back({{"t", b.t},
                   {"no_slack", io::number_or_null(b.no_slack)},
                   {"with_slack", io::number_or_null(b.with_slack)},
                   {"within_no_slack", log.terminated && static_cast<double>(log.total_resamples) <= b.no_slack}});
  }
  return out;
}

inline Json report_json(const SolveReport& r, std::uint64_t budget) {
  Json out;
  out["problem"] = r.problem;
  out["seed"] = r.log.seed;
  out["budget"] = budget;
  out["num_events"] = r.num_events;
  out["terminated"] = r.log.terminated;
  out["valid"] = r.valid;
  out["total_resamples"] = r.log.total_resamples;
  out["iterations"] = r.log.proper_iterations();
  out["criterion"] = {{"kind", "CLL"},
                      {"holds", r.criterion_holds},
                      {"worst_ratio", r.worst_ratio},
                      {"epsilon", io::number_or_null(r.epsilon)}};
  out["bounds"] = bounds_json(r.bounds, r.log, r.criterion_holds);
  out["log"] = io::to_json(r.log);
  return out;
}

inline std::uint64_t run_seed(const io::Instance& inst, const Options& opt) {
  if (opt.seed) return *opt.seed;
  return inst.seed.value_or(1);
}

/// Single run, or `repeat` runs seeded derive_seed(seed, r) spread over
/// `jobs` threads with a per-run summary.
template <class Problem, class SolutionJson>
Outcome run_app(const Problem& prob, const Options& opt, std::uint64_t seed, SolutionJson solution_json) {
  const auto crit = prob.criterion();
  const auto tails = run_tails();
  Outcome o;
  if (opt.repeat <= 1) {
    auto s = solve(prob, crit, seed, opt.budget, tails);
    o.json = report_json(s.report, opt.budget);
    o.json["solution"] = s.report.log.terminated ? solution_json(s.solution) : Json(nullptr);
    o.exit_code = exit_code_for(s.report.log.terminated, s.report.valid);
    return o;
  }
  std::vector<SolveReport> reps(opt.repeat);
  lll::detail::parallel_for(opt.repeat, opt.jobs, [&](std::size_t r) {
    reps[r] = solve(prob, crit, derive_seed(seed, r), opt.budget, tails).report;
  });
  Json runs = Json::array();
  std::uint64_t valid = 0, terminated = 0, max_res = 0;
  double total = 0;
  std::vector<std::uint64_t> within(tails.size(), 0);
  for (const auto& r : reps) {
    runs.push_back({{"seed", r.log.seed},
                    {"terminated", r.log.terminated},
                    {"valid", r.valid},
                    {"total_resamples", r.log.total_resamples},
                    {"iterations", r.log.proper_iterations()}});
    valid += r.valid;
    terminated += r.log.terminated;
    max_res = std::max(max_res, r.log.total_resamples);
    total += static_cast<double>(r.log.total_resamples);
    for (std::size_t k = 0; k < tails.size(); ++k)
      within[k] += r.log.terminated && static_cast<double>(r.log.total_resamples) <= r.bounds[k].no_slack;
  }
  Json bounds = Json::array();
  for (std::size_t k = 0; k < tails.size(); ++k)
    bounds.push_back({{"t", tails[k]},
                      {"no_slack", crit.cover.holds ? io::number_or_null(crit.bound(tails[k])) : Json(nullptr)},
                      {"runs_within", crit.cover.holds ? Json(within[k]) : Json(nullptr)}});
  o.json["problem"] = reps.front().problem;
  o.json["seed"] = seed;
  o.json["repeat"] = opt.repeat;
  o.json["budget"] = opt.budget;
  o.json["num_events"] = prob.num_events();
  o.json["criterion"] = {{"kind", "CLL"}, {"holds", crit.cover.holds}, {"worst_ratio", crit.cover.worst_ratio},
                         {"epsilon", io::number_or_null(crit.cover.epsilon)}};
  o.json["runs"] = runs;
  o.json["summary"] = {{"terminated", terminated},
                       {"valid", valid},
                       {"max_resamples", max_res},
                       {"mean_resamples", total / static_cast<double>(reps.size())},
                       {"bounds", bounds}};
  o.exit_code = terminated < reps.size() ? kBudgetExhausted : valid < reps.size() ? kValidationFailure : kSuccess;
  return o;
}

inline Outcome run_explicit(const io::ExplicitSpaceInstance& e, const Options& opt, std::uint64_t seed) {
  ExplicitSpaceBundle b(e.space);
  const auto& sp = e.space;
  std::vector<double> p;
  for (int i = 0; i < sp.num_events(); ++i) p.push_back(to_double(sp.probability(i)));
  // Shearer bounds when the point lies inside the region.
  std::vector<PredictedBound> bounds;
  bool in_region = false;
  if (sp.num_events() <= kDefaultEnumerationCap) {
    PolynomialTable<double> table(sp.graph(), p);
    in_region = table.in_region();
    if (in_region) {
      std::vector<double> ratios;
      for (int i = 0; i < sp.num_events(); ++i) ratios.push_back(table.singleton_ratio(i));
      const double eps = shearer_slack(table);
      const double q0s = std::isfinite(eps) ? PolynomialTable<double>(sp.graph(), scaled(p, 1 + eps)).q_empty() : 0;
      for (double t : run_tails())
        bounds.push_back({t, bounds::shearer_no_slack(ratios, t),
                          std::isfinite(eps) ? bounds::shearer_with_slack(q0s, eps, t) : std::numeric_limits<double>::infinity()});
    }
  }
  auto check = [&](int s) { return sp.events_at(s) == 0; };
  auto one = [&](std::uint64_t sd) {
    EngineOptions eo;
    eo.max_resamples = opt.budget;
    auto res = maximal_set_resample(b, sd, eo);
    SolveReport r;
    r.problem = "explicit-space";
    r.num_events = sp.num_events();
    r.criterion_holds = in_region;
    r.bounds = bounds;
    r.log = std::move(res.log);
    r.valid = r.log.terminated && check(res.state);
    return std::make_pair(r, res.state);
  };
  Outcome o;
  if (opt.repeat <= 1) {
    auto [r, state] = one(seed);
    o.json = report_json(r, opt.budget);
    o.json["criterion"] = {{"kind", "Shearer"}, {"holds", in_region}};
    o.json["solution"] = r.log.terminated ? Json(state) : Json(nullptr);
    o.exit_code = exit_code_for(r.log.terminated, r.valid);
    return o;
  }
  std::vector<SolveReport> reps(opt.repeat);
  lll::detail::parallel_for(opt.repeat, opt.jobs, [&](std::size_t k) { reps[k] = one(derive_seed(seed, k)).first; });
  Json runs = Json::array();
  std::uint64_t valid = 0, terminated = 0;
  for (const auto& r : reps) {
    runs.push_back({{"seed", r.log.seed}, {"terminated", r.log.terminated}, {"valid", r.valid},
                    {"total_resamples", r.log.total_resamples}, {"iterations", r.log.proper_iterations()}});
    valid += r.valid;
    terminated += r.log.terminated;
  }
  o.json = {{"problem", "explicit-space"}, {"seed", seed}, {"repeat", opt.repeat}, {"budget", opt.budget},
            {"num_events", sp.num_events()}, {"runs", runs},
            {"summary", {{"terminated", terminated}, {"valid", valid}}}};
  o.exit_code = terminated < reps.size() ? kBudgetExhausted : valid < reps.size() ? kValidationFailure : kSuccess;
  return o;
}

}  // namespace detail

inline Outcome cmd_run(const io::Instance& inst, const Options& opt) {
  if (opt.budget == 0) throw InputError("budget must be positive");
  const std::uint64_t seed = detail::run_seed(inst, opt);
  if (const auto* e = std::get_if<io::ExplicitSpaceInstance>(&inst.payload)) return detail::run_explicit(*e, opt, seed);
  if (const auto* l = std::get_if<io::LatinInstance>(&inst.payload)) {
    LatinTransversalProblem prob(l->matrix, l->t);
    return detail::run_app(prob, opt, seed, [](const std::vector<Permutation>& s) { return Json(s); });
  }
  if (const auto* m = std::get_if<io::RainbowMatchingInstance>(&inst.payload)) {
    RainbowMatchingProblem prob(m->coloring);
    return detail::run_app(prob, opt, seed, [](const Matching& s) { return io::matching_json(s); });
  }
  if (const auto* r = std::get_if<io::RainbowTreeInstance>(&inst.payload)) {
    RainbowTreesProblem prob(r->coloring, r->t);
    return detail::run_app(prob, opt, seed, [](const std::vector<SpanningTree>& s) {
      Json out = Json::array();
      for (const auto& t : s) out.push_back(io::tree_json(t));
      return out;
    });
  }
  throw InputError("instance kind '" + inst.kind + "' has no probability space to run on");
}

// ---------------------------------------------------------------------------
// verify-oracle

inline Json to_json(const DistributionTestReport& r) {
  return {{"support_size", r.support_size},
          {"samples", r.samples},
          {"out_of_support", r.out_of_support},
          {"max_abs_deviation", r.max_abs_deviation},
          {"chi_square", r.chi_square},
          {"degrees_of_freedom", r.degrees_of_freedom},
          {"threshold", r.threshold},
          {"significance", r.significance},
          {"pass", r.pass}};
}

inline Json to_json(const OracleCheckReport& r) {
  Json out{{"family", r.family},
           {"size", r.size},
           {"event", r.event},
           {"num_events", r.num_events},
           {"seed", r.seed},
           {"r1", to_json(r.r1)},
           {"r2", {{"trials", r.r2_trials}, {"violations", r.r2_violations}}},
           {"pass", r.pass()}};
  if (r.edge_marginal)
    out["edge_marginal"] = {{"expected", r.edge_marginal->expected},
                            {"max_abs_z", r.edge_marginal->max_abs_z},
                            {"pass", r.edge_marginal->pass}};
  if (r.kernel_preserves_measure)
    out["kernel"] = {{"preserves_measure", *r.kernel_preserves_measure}, {"r2_violations", *r.kernel_r2_violations}};
  return out;
}

inline Json to_json(const StreakReport& r) {
  Json hist = Json::array();
  for (const auto& [len, count] : r.histogram) hist.push_back({len, count});
  const auto k = static_cast<std::size_t>(r.k);
  const double bound = chain_streak_bound(r.k, r.l);
  return {{"family", "chain-streak"},
          {"k", r.k},
          {"l", r.l},
          {"seed", r.seed},
          {"runs", r.runs},
          {"budget_exhausted", r.budget_exhausted},
          {"histogram", hist},
          {"streak_at_least_k", r.count_at_least(k)},
          {"frequency_at_least_k", r.frequency_at_least(k)},
          {"lower_bound", bound},
          {"meets_lower_bound", r.frequency_at_least(k) >= bound}};
}

struct VerifyRequest {
  std::string family = "permutations";
  int size = 0;
  int event = 0;
  int k = 64;
  int l = 6;
  std::uint64_t runs = 10'000;
};

/// Oracle families exit 1 when a check fails; the chain-streak streak report
/// is a measurement and always exits 0.
inline Outcome cmd_verify_oracle(const VerifyRequest& req, const Options& opt) {
  Outcome o;
  const std::uint64_t seed = opt.seed.value_or(1);
  if (req.family == "chain-streak") {
    ChainStreakBundle b(req.k, req.l);
    o.json = to_json(measure_consecutive_runs(b, req.runs, seed, opt.budget, opt.jobs));
    return o;
  }
  OracleCheckOptions c;
  c.family = req.family;
  c.size = req.size;
  c.event = req.event;
  c.samples = opt.samples;
  c.r2_trials = opt.samples;
  c.seed = seed;
  c.jobs = opt.jobs;
  const auto rep = check_oracle_family(c);
  o.json = to_json(rep);
  o.exit_code = rep.pass() ? kSuccess : kValidationFailure;
  return o;
}

// ---------------------------------------------------------------------------
// Output

/// Indented "key: value" rendering for --format text.
inline void render_text(const Json& j, std::ostringstream& out, int indent = 0) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  for (auto it = j.begin(); it != j.end(); ++it) {
    const auto& v = it.value();
    const bool nested = v.is_object() || (v.is_array() && !v.empty() && (v.front().is_object() || v.front().is_array()) && v.size() <= 16);
    if (v.is_object()) {
      out << pad << it.key() << ":\n";
      render_text(v, out, indent + 2);
    } else if (nested) {
      out << pad << it.key() << ":\n";
      for (const auto& e : v) {
        if (e.is_object()) {
          out << pad << "  -\n";
          render_text(e, out, indent + 4);
        } else {
          out << pad << "  " << e.dump() << "\n";
        }
      }
    } else {
      std::string s = v.dump();
      if (s.size() > 200) s = s.substr(0, 197) + "...";
      out << pad << it.key() << ": " << s << "\n";
    }
  }
}

inline std::string render(const Json& j, bool text) {
  if (!text) return j.dump(2) + "\n";
  std::ostringstream out;
  render_text(j, out);
  return out.str();
}

}  // namespace lll::cli
