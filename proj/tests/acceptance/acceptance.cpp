// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero if any criterion fails.

#include <CLI11.hpp>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "../support.hpp"
#include "lll/apps/solve.hpp"
#include "lll/engine.hpp"
#include "lll/polynomials.hpp"
#include "lll/synth.hpp"
#include "lll/verify/chain_streak.hpp"
#include "lll/verify/distribution.hpp"
#include "lll/verify/oracle_suite.hpp"

using namespace lll;
using lll::testing::brute_breve;
using lll::testing::brute_q;
using lll::testing::random_graph;
using lll::testing::random_region_point;

namespace {

constexpr double kTol = 1e-12;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Records the first few failures and counts the rest.
class Tally {
 public:
  void check(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    ++failures_;
    if (failures_ <= 3) first_ += (first_.empty() ? "" : "; ") + what;
  }
  std::size_t failures() const { return failures_; }
  Outcome outcome(const std::string& summary) const {
    std::ostringstream s;
    s << summary << ", " << checks_ << " checks, " << failures_ << " violations";
    if (failures_) s << " (" << first_ << ")";
    return {failures_ == 0, s.str()};
  }

 private:
  std::size_t checks_ = 0, failures_ = 0;
  std::string first_;
};

template <class F>
void for_each_subset(Mask all, F f) {
  for (Mask S = 0;; ++S) {
    f(S);
    if (S == all) break;
  }
}

template <class F>
void for_each_submask(Mask of, F f) {
  for (Mask S = of;; S = (S - 1) & of) {
    f(S);
    if (S == 0) break;
  }
}

// ---------------------------------------------------------------------------
// 1. Polynomial identities.

template <class Scalar, class Near>
void check_identities(Tally& tally, const DependencyGraph& g, const PolynomialTable<Scalar>& t, Near near,
                      bool submodular) {
  const Mask all = t.all();
  const auto& p = t.p();
  Scalar qsum(0);
  for (const auto& v : t.q_values()) qsum += v;
  tally.check(near(qsum, Scalar(1)), "q values do not sum to 1");
  for_each_subset(all, [&](Mask S) {
    for (Mask m = S; m; m &= m - 1) {
      const int a = lowest_bit(m);
      tally.check(near(t.breve(S), t.breve(S & ~bit(a)) - p[static_cast<std::size_t>(a)] * t.breve(S & ~g.closed_mask(a))),
                  "deletion recursion");
    }
    Scalar outside(0);
    for_each_submask(all & ~S, [&](Mask Y) { outside += t.q(Y); });
    tally.check(near(t.breve(S), outside), "breve as a sum of q outside S");
  });
  for (Mask I : t.independent_sets()) {
    Scalar inner(0);
    for_each_submask(g.closed_mask_of(I), [&](Mask S) { inner += t.q(S); });
    tally.check(near(t.q(I), t.power(I) * inner), "q expansion over the closed neighborhood");
  }
  if (!submodular) return;
  for_each_subset(all, [&](Mask A) {
    for_each_subset(all, [&](Mask B) {
      tally.check(t.breve(A) * t.breve(B) + Scalar(kTol) >= t.breve(A | B) * t.breve(A & B), "breve log-submodularity");
      tally.check(t.q(A) * t.q(B) + Scalar(kTol) >= t.q(A | B) * t.q(A & B), "q log-submodularity");
    });
  });
}

Outcome polynomial_identities() {
  Tally tally;
  std::mt19937_64 rng(1);
  auto dnear = [](double a, double b) { return std::abs(a - b) <= kTol; };
  auto exact = [](const Rational& a, const Rational& b) { return a == b; };
  for (int rep = 0; rep < 200; ++rep) {
    const int n = 1 + rep % 10;
    auto g = random_graph(n, 0.4, rng);
    auto p = random_region_point(g, rng);
    PolynomialTable<double> t(g, p);
    tally.check(t.in_region(), "generated point outside the region");
    check_identities(tally, g, t, dnear, true);
    // Against brute-force alternating sums.
    if (n <= 8)
      for_each_subset(t.all(), [&](Mask S) {
        tally.check(dnear(t.breve(S), brute_breve(g, p, S)), "breve differs from brute force");
        tally.check(dnear(t.q(S), brute_q(g, p, S)), "q differs from brute force");
      });
    // Monotonicity: lowering p cannot decrease any breve value.
    auto lower = p;
    for (auto& v : lower) v *= std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    PolynomialTable<double> tl(g, lower);
    for_each_subset(t.all(), [&](Mask S) { tally.check(tl.breve(S) >= t.breve(S) - kTol, "breve not monotone in p"); });
    // Exact mode on the same dyadic inputs.
    PolynomialTable<Rational> rt(g, lll::testing::to_rational(p));
    tally.check(rt.in_region(), "exact table outside the region");
    check_identities(tally, g, rt, exact, n <= 7);
  }
  return tally.outcome("200 instances, n <= 10, double and exact");
}

// ---------------------------------------------------------------------------
// 2. GLL and CLL imply Shearer with ratio bounds.

Outcome criterion_implications() {
  Tally tally;
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> shrink(0.5, 1.0);
  for (int rep = 0; rep < 500; ++rep) {
    const int n = 1 + rep % 10;
    auto g = random_graph(n, 0.4, rng);
    std::uniform_real_distribution<double> U(0.01, 0.6);
    std::vector<double> x(static_cast<std::size_t>(n)), p(x.size());
    for (auto& v : x) v = U(rng);
    for (int i = 0; i < n; ++i) {
      double rhs = x[static_cast<std::size_t>(i)];
      for (int j : g.neighbors(i)) rhs *= 1 - x[static_cast<std::size_t>(j)];
      p[static_cast<std::size_t>(i)] = rhs * shrink(rng);
    }
    if (!check_gll(g, p, x)) {
      tally.check(false, "constructed GLL instance rejected");
      continue;
    }
    PolynomialTable<double> t(g, p);
    tally.check(t.in_region(), "GLL instance outside the region");
    for (int a = 0; a < n; ++a) {
      const double xa = x[static_cast<std::size_t>(a)];
      tally.check(t.singleton_ratio(a) <= xa / (1 - xa) + kTol, "ratio above x/(1-x)");
    }
  }
  for (int rep = 0; rep < 500; ++rep) {
    const int n = 1 + rep % 10;
    auto g = random_graph(n, 0.4, rng);
    std::uniform_real_distribution<double> U(0.01, 1.5);
    std::vector<double> y(static_cast<std::size_t>(n)), p(y.size());
    for (auto& v : y) v = U(rng);
    // Y over the closed neighborhood, by direct enumeration of its subsets.
    for (int i = 0; i < n; ++i) {
      const Mask nb = g.closed_mask(i);
      double Y = 0;
      for_each_submask(nb, [&](Mask I) {
        if (!lll::testing::brute_independent(g, I)) return;
        double w = 1;
        for (Mask m = I; m; m &= m - 1) w *= y[static_cast<std::size_t>(lowest_bit(m))];
        Y += w;
      });
      p[static_cast<std::size_t>(i)] = y[static_cast<std::size_t>(i)] / Y * shrink(rng);
    }
    if (!check_cll(g, p, y)) {
      tally.check(false, "constructed CLL instance rejected");
      continue;
    }
    PolynomialTable<double> t(g, p);
    tally.check(t.in_region(), "CLL instance outside the region");
    for (int a = 0; a < n; ++a) tally.check(t.singleton_ratio(a) <= y[static_cast<std::size_t>(a)] + kTol, "ratio above y");
  }
  return tally.outcome("500 GLL + 500 CLL instances");
}

// ---------------------------------------------------------------------------
// 3. Automatic slack.

Outcome automatic_slack() {
  Tally tally;
  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 200; ++rep) {
    const int n = 1 + rep % 10;
    auto g = random_graph(n, 0.4, rng);
    auto p = random_region_point(g, rng);
    PolynomialTable<double> t(g, p);
    if (!t.in_region()) {
      tally.check(false, "generated point outside the region");
      continue;
    }
    const double eps = t.q_empty() / (2 * t.singleton_sum());
    tally.check(std::abs(eps - shearer_slack(t)) <= kTol * std::max(1.0, eps), "shearer_slack formula");
    PolynomialTable<double> ts(g, scaled(p, 1 + eps));
    tally.check(ts.in_region(), "scaled point left the region");
    tally.check(ts.q_empty() >= t.q_empty() / 2 - kTol, "q_empty dropped below half");
  }
  return tally.outcome("200 in-region instances");
}

// ---------------------------------------------------------------------------
// 4 and 5. Oracle distribution and R2 checks.

struct OracleRuns {
  std::vector<OracleCheckReport> reports;
  double seconds = 0;
};

const OracleRuns& oracle_runs(unsigned jobs) {
  static OracleRuns runs;
  static bool done = false;
  if (done) return runs;
  done = true;
  const auto start = std::chrono::steady_clock::now();
  for (const auto& family : oracle_families()) {
    OracleCheckOptions opt;
    opt.family = family;
    opt.samples = 1'000'000;
    opt.r2_trials = 1'000'000;
    opt.seed = 4;
    opt.jobs = jobs;
    // Event 0 is the distribution target; R2 is exercised on every event.
    const auto first = check_oracle_family(opt);
    runs.reports.push_back(first);
    for (int e = 1; e < first.num_events; ++e) {
      opt.event = e;
      runs.reports.push_back(check_oracle_family(opt));
    }
  }
  runs.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return runs;
}

Outcome oracle_distributions(unsigned jobs) {
  const auto& runs = oracle_runs(jobs);
  Tally tally;
  std::ostringstream s;
  for (const auto& r : runs.reports) {
    if (r.event != 0) continue;
    const std::string tag = r.family + "(" + std::to_string(r.size) + ")";
    tally.check(r.r1.pass && r.r1.samples == 1'000'000 && r.r1.significance == 1e-6, tag + " chi-square");
    if (r.edge_marginal) tally.check(r.edge_marginal->pass, tag + " edge marginals");
    if (r.kernel_preserves_measure) tally.check(*r.kernel_preserves_measure, tag + " kernel measure");
    s << tag << " chi2=" << r.r1.chi_square << "/" << r.r1.threshold << " ";
  }
  tally.check(runs.seconds < 600, "runtime above 10 minutes");
  s << "in " << runs.seconds << " s";
  return tally.outcome(s.str());
}

Outcome oracle_r2(unsigned jobs) {
  const auto& runs = oracle_runs(jobs);
  Tally tally;
  std::uint64_t trials = 0;
  for (const auto& r : runs.reports) {
    const std::string tag = r.family + " event " + std::to_string(r.event);
    tally.check(r.r2_trials == 1'000'000 && r.r2_violations == 0, tag + " R2 violations");
    if (r.kernel_r2_violations) tally.check(*r.kernel_r2_violations == 0, tag + " exhaustive kernel R2");
    trials += r.r2_trials;
  }
  return tally.outcome(std::to_string(runs.reports.size()) + " oracle/event pairs, " + std::to_string(trials) +
                       " trials");
}

// ---------------------------------------------------------------------------
// 6. Coupling bound on a path of three events over four fair bits.

Outcome coupling_bound(unsigned jobs) {
  using Pred = std::function<bool(const std::vector<int>&)>;
  const std::vector<Pred> events{[](const std::vector<int>& v) { return v[0] == 0 && v[1] == 0; },
                                 [](const std::vector<int>& v) { return v[1] == 0 && v[2] == 0; },
                                 [](const std::vector<int>& v) { return v[2] == 0 && v[3] == 0; }};
  const Rational half(1, 2);
  const auto g = DependencyGraph::path(3);
  ExplicitSpaceBundle b(explicit_product_space({{half, half}, {half, half}, {half, half}, {half, half}}, events, g));
  const std::vector<StableSetSequence> seqs{
      {{{0}}},       {{{1}}},         {{{0, 2}}},         {{{0}, {0}}},           {{{0}, {1}}},
      {{{1}, {0, 2}}}, {{{0, 2}, {1}}}, {{{1}, {1}, {1}}}, {{{0}, {1}, {2}}}, {{{0, 2}, {0, 2}}}};
  constexpr std::uint64_t kRuns = 100'000;
  std::vector<std::array<std::uint8_t, 10>> follows(kRuns);
  lll::detail::parallel_for(kRuns, jobs, [&](std::size_t r) {
    auto res = maximal_set_resample(b, derive_seed(6, r));
    for (std::size_t k = 0; k < seqs.size(); ++k) follows[r][k] = log_follows(res.log, seqs[k]);
  });
  Tally tally;
  std::ostringstream s;
  for (std::size_t k = 0; k < seqs.size(); ++k) {
    tally.check(validate_sequence(g, seqs[k]) && seqs[k].proper() && seqs[k].total_size() <= 4, "sequence malformed");
    // Every event has probability 1/4 and p_I multiplies over all sets.
    const double pI = std::pow(0.25, static_cast<double>(seqs[k].total_size()));
    std::uint64_t hits = 0;
    for (const auto& f : follows) hits += f[k];
    const double freq = static_cast<double>(hits) / kRuns;
    tally.check(freq <= pI + 3 * binomial_std_error(pI, kRuns), "sequence " + std::to_string(k) + " followed too often");
    s << freq << "/" << pI << " ";
  }
  return tally.outcome("10 sequences x 1e5 runs, freq/p: " + s.str());
}

// ---------------------------------------------------------------------------
// 7. Truncated sequence mass.

// Proper stable set sequences from J by explicit depth-first enumeration.
double brute_sequence_mass(const DependencyGraph& g, const std::vector<double>& p, Mask J, int budget) {
  const int n = g.n();
  std::vector<Mask> ind;
  for (Mask I = 1; I < bit(n); ++I)
    if (lll::testing::brute_independent(g, I)) ind.push_back(I);
  auto weight = [&](Mask I) {
    double w = 1;
    for (int i = 0; i < n; ++i)
      if (I >> i & 1) w *= p[static_cast<std::size_t>(i)];
    return w;
  };
  auto reach = [&](Mask I) {
    Mask r = I;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if ((I >> i & 1) && g.adjacent(i, j)) r |= bit(j);
    return r;
  };
  std::function<double(Mask, int)> rec = [&](Mask I, int left) {
    double total = weight(I);
    for (Mask next : ind)
      if ((next & ~reach(I)) == 0 && popcount(next) <= left) total += weight(I) * rec(next, left - popcount(next));
    return total;
  };
  return popcount(J) > budget ? 0.0 : rec(J, budget - popcount(J));
}

Outcome sequence_mass_bound() {
  Tally tally;
  std::mt19937_64 rng(7);
  int small_p = 0;
  for (int rep = 0; rep < 60; ++rep) {
    const int n = 1 + rep % 4;
    const bool low = rep % 2 == 0;
    auto g = random_graph(n, 0.5, rng);
    auto p = random_region_point(g, rng, low ? 0.2 : 0.9);
    PolynomialTable<double> t(g, p);
    small_p += low;
    for (Mask J : t.independent_sets()) {
      if (J == 0) continue;
      const double target = t.q(J) / t.q_empty();
      double prev = 0;
      for (int budget = 1; budget <= 40; ++budget) {
        const double m = sequence_mass(g, p, J, budget);
        if (budget <= 6) tally.check(std::abs(m - brute_sequence_mass(g, p, J, budget)) <= 1e-12, "mass differs from enumeration");
        tally.check(m >= prev - 1e-15, "mass decreased with budget");
        tally.check(m <= target + kTol, "mass above q_J/q_empty");
        prev = m;
      }
      if (low) tally.check(prev >= 0.99 * target, "budget 40 short of 99% for p <= 0.2");
    }
  }
  return tally.outcome("60 instances (" + std::to_string(small_p) + " with p <= 0.2), budgets 1..40");
}

// ---------------------------------------------------------------------------
// 8-10. Applications.

Outcome rainbow_matching(unsigned jobs) {
  constexpr int kSeeds = 100;
  const double t = std::log(100.0);
  std::vector<SolveReport> reps(kSeeds);
  lll::detail::parallel_for(kSeeds, jobs, [&](std::size_t s) {
    Rng rng(derive_seed(8, s));
    RainbowMatchingProblem prob(random_capped_coloring(128, 27 * 64 / 128, rng));
    reps[s] = solve(prob, prob.criterion(), s, 1'000'000, {t}).report;
  });
  Tally tally;
  int within = 0;
  std::uint64_t worst = 0;
  double bound = 0;
  for (const auto& r : reps) {
    tally.check(r.criterion_holds, "criterion fails on a coloring");
    tally.check(r.log.terminated && r.valid, "run did not produce a rainbow perfect matching");
    within += r.criterion_holds && r.within_bound(t);
    worst = std::max(worst, r.log.total_resamples);
    bound = r.bounds.front().no_slack;
  }
  tally.check(within >= 99, "fewer than 99 runs within the bound");
  return tally.outcome("K_128 cap 13: " + std::to_string(within) + "/100 within bound ~" + std::to_string(bound) +
                       ", max resamples " + std::to_string(worst));
}

Outcome latin_transversals(unsigned jobs) {
  constexpr int kSeeds = 20;
  const double t = std::log(20.0);
  const int n = 128;
  const int count = static_cast<int>(std::floor(823543.0 * n / 16777216.0));  // 7^7 n / 8^8
  const auto start = std::chrono::steady_clock::now();
  std::vector<SolveReport> reps(kSeeds);
  lll::detail::parallel_for(kSeeds, jobs, [&](std::size_t s) {
    Rng rng(derive_seed(9, s));
    LatinTransversalProblem prob(random_capped_matrix(n, count, rng), count);
    reps[s] = solve(prob, prob.criterion(), s, 10'000'000, {t}).report;
  });
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  Tally tally;
  tally.check(count == 6, "transversal count is not 6");
  std::uint64_t worst = 0;
  for (const auto& r : reps) {
    tally.check(r.criterion_holds, "criterion fails on a matrix");
    tally.check(r.log.terminated && r.valid, "run did not produce disjoint Latin transversals");
    tally.check(r.criterion_holds && r.within_bound(t), "run exceeded the bound");
    worst = std::max(worst, r.log.total_resamples);
  }
  tally.check(secs < 1800, "runtime above 30 minutes");
  return tally.outcome("n=128 t=6 cap 6, 20 seeds, max resamples " + std::to_string(worst) + ", bound ~" +
                       std::to_string(reps.front().bounds.front().no_slack) + ", " + std::to_string(secs) + " s");
}

Outcome rainbow_trees(unsigned jobs) {
  constexpr int kSeeds = 20;
  const int n = 256;
  const int count = static_cast<int>(std::floor(n / 32.0 * std::pow(7.0 / 8.0, 7)));
  std::vector<SolveReport> reps(kSeeds);
  lll::detail::parallel_for(kSeeds, jobs, [&](std::size_t s) {
    Rng rng(derive_seed(10, s));
    RainbowTreesProblem prob(random_capped_coloring(n, count, rng), count);
    reps[s] = solve(prob, prob.criterion(), s, 10'000'000, {std::log(20.0)}).report;
  });
  Tally tally;
  tally.check(count == 3, "tree count is not 3");
  std::uint64_t worst = 0;
  for (const auto& r : reps) {
    tally.check(r.log.terminated && r.valid, "run did not produce disjoint rainbow spanning trees");
    worst = std::max(worst, r.log.total_resamples);
  }
  return tally.outcome("n=256 t=3 cap 3, 20 seeds, max resamples " + std::to_string(worst));
}

// ---------------------------------------------------------------------------
// 11. Long streaks of one isolated event.

Outcome chain_streak(unsigned jobs) {
  ChainStreakBundle b(64, 6);
  const auto rep = measure_consecutive_runs(b, 10'000, 11, 1'000'000, jobs);
  const double freq = rep.frequency_at_least(64);
  Tally tally;
  tally.check(rep.budget_exhausted == 0, "runs exhausted the budget");
  tally.check(freq >= 0.10, "streak frequency " + std::to_string(freq) + " below 0.10");
  return tally.outcome("k=64 l=6, 1e4 runs, frequency of streak >= 64 is " + std::to_string(freq) +
                       " (threshold 0.10, lower bound " + std::to_string(chain_streak_bound(64, 6)) + ")");
}

// ---------------------------------------------------------------------------
// 12. Byte-identical reruns of the command-line tool.

std::string capture(const std::string& cmd) {
  std::string out;
  FILE* f = popen(cmd.c_str(), "r");
  if (!f) return out;
  std::array<char, 4096> buf{};
  std::size_t k;
  while ((k = fread(buf.data(), 1, buf.size(), f)) > 0) out.append(buf.data(), k);
  const int status = pclose(f);
  out += "\n[status " + std::to_string(status) + "]";
  return out;
}

Outcome determinism(const std::string& cli) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("lll_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const auto write = [&](const char* name, const char* text) {
    std::ofstream(dir / name) << text;
    return (dir / name).string();
  };
  const auto graph = write("graph.json",
                           R"({"kind":"custom-graph","graph":{"n":3,"edges":[[0,1],[1,2]]},"p":["1/8","0.1","1/5"],)"
                           R"("x":["1/4","1/4","1/4"],"y":[0.2,0.2,0.3]})");
  const auto space = write("space.json",
                           R"({"kind":"explicit-space","states":4,"prob":["1/4","1/4","1/4","1/4"],)"
                           R"("events":[[0],[0,1]],"graph":{"n":2,"edges":[[0,1]]}})");
  const std::vector<std::vector<std::string>> groups{
      {"criteria " + graph},
      {"criteria --exact " + graph},
      {"criteria --format text " + graph},
      {"run --seed 4 " + space},
      {"latin --n 32 --t 1 --cap 1 --seed 7"},
      {"latin --n 32 --t 1 --cap 1 --criteria"},
      {"rainbow-matching --n 64 --cap 8 --seed 3"},
      {"rainbow-tree --n 64 --t 1 --cap 1 --seed 5"},
      {"rainbow-matching --n 64 --cap 8 --seed 3 --repeat 8 --jobs 1",
       "rainbow-matching --n 64 --cap 8 --seed 3 --repeat 8 --jobs 3"},
      {"verify-oracle --family permutations --samples 200000 --seed 9 --jobs 1",
       "verify-oracle --family permutations --samples 200000 --seed 9 --jobs 3"},
      {"verify-oracle --family chain-streak --k 8 --l 2 --runs 500 --seed 2"},
  };
  Tally tally;
  std::size_t invocations = 0;
  for (const auto& group : groups) {
    // Reruns, and variants differing only in --jobs, must agree byte for byte.
    const std::string reference = capture(cli + " " + group.front() + " 2>/dev/null");
    tally.check(reference.find("[status 0]") != std::string::npos && reference.size() > 20,
                "'" + group.front() + "' failed");
    for (const auto& cmd : group)
      for (int rep = 0; rep < 2; ++rep) {
        ++invocations;
        tally.check(capture(cli + " " + cmd + " 2>/dev/null") == reference, "'" + cmd + "' output differs");
      }
  }
  fs::remove_all(dir);
  return tally.outcome(std::to_string(invocations) + " invocations in " + std::to_string(groups.size()) + " groups");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::vector<int> only;
  unsigned jobs = 1;
  std::string cli = LLL_CLI_PATH;
  app.add_option("--only", only, "Run only these criteria (1-12)")->check(CLI::Range(1, 12));
  app.add_option("--jobs", jobs, "Worker threads for seeded repetitions");
  app.add_option("--cli", cli, "Path to the command-line tool")->capture_default_str();
  CLI11_PARSE(app, argc, argv);
  if (jobs == 0) jobs = 1;

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"polynomial identities", polynomial_identities},
      {"criterion implications", criterion_implications},
      {"automatic slack", automatic_slack},
      {"oracle distributions (R1)", [&] { return oracle_distributions(jobs); }},
      {"oracle R2", [&] { return oracle_r2(jobs); }},
      {"coupling bound", [&] { return coupling_bound(jobs); }},
      {"sequence mass bound", sequence_mass_bound},
      {"rainbow perfect matching", [&] { return rainbow_matching(jobs); }},
      {"Latin transversals", [&] { return latin_transversals(jobs); }},
      {"rainbow spanning trees", [&] { return rainbow_trees(jobs); }},
      {"long streak of an isolated event", [&] { return chain_streak(jobs); }},
      {"determinism", [&] { return determinism(cli); }},
  };
  const std::set<int> selected(only.begin(), only.end());
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const int id = static_cast<int>(k + 1);
    if (!selected.empty() && !selected.count(id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += !o.pass;
    std::printf("%s %2d %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", id, criteria[k].first.c_str(), o.detail.c_str(),
                secs);
    std::fflush(stdout);
  }
  return failed ? 1 : 0;
}
