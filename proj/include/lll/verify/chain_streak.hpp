#pragma once

// Fair-bit space with nonstandard but valid oracles under which
// MaximalSetResample produces long runs of one isolated event.
//
// Variables X_i, Y_i^j, Z_i (1 <= i <= k, 1 <= j <= l) and W. Events
// E_i = {X_i = 0}, E_i^j = {Y_i^j = 0}, E' = {W = 1}; graph E_i ~ E_i^j only.
// Oracles: r_i redraws X_i; r_i^j maps (X_i, Y_i^j, Z_i) to (Z_i, fresh, X_i);
// r' shifts (W, Z_1..Z_k) to (Z_1..Z_k, fresh).
//
// Event indices: E_i is i, E_i^j is k + i*l + j, E' is k + k*l (0-based i, j).

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lll/detail/parallel.hpp"
#include "lll/engine.hpp"
#include "lll/error.hpp"
#include "lll/graph.hpp"
#include "lll/rng.hpp"

namespace lll {

class ChainStreakBundle {
 public:
  /// Bits laid out as X[0..k), Y[k..k+kl), Z[k+kl..2k+kl), W.
  using State = std::vector<unsigned char>;

  ChainStreakBundle(int k, int l) : k_(k), l_(l) {
    if (k < 1 || l < 1) throw InputError("chain-streak needs k, l >= 1");
  }

  int k() const noexcept { return k_; }
  int l() const noexcept { return l_; }
  int num_events() const noexcept { return k_ + k_ * l_ + 1; }
  int num_variables() const noexcept { return 2 * k_ + k_ * l_ + 1; }

  int event_x(int i) const { return i; }
  int event_y(int i, int j) const { return k_ + i * l_ + j; }
  int event_w() const { return k_ + k_ * l_; }

  std::size_t var_x(int i) const { return static_cast<std::size_t>(i); }
  std::size_t var_y(int i, int j) const { return static_cast<std::size_t>(k_ + i * l_ + j); }
  std::size_t var_z(int i) const { return static_cast<std::size_t>(k_ + k_ * l_ + i); }
  std::size_t var_w() const { return static_cast<std::size_t>(2 * k_ + k_ * l_); }

  State sample(Rng& rng) const {
    State s(static_cast<std::size_t>(num_variables()));
    for (auto& b : s) b = fair_bit(rng);
    return s;
  }

  bool holds(int e, const State& s) const {
    if (e < k_) return s[var_x(e)] == 0;
    if (e < event_w()) return s[static_cast<std::size_t>(e)] == 0;  // Y bits share event indices
    return s[var_w()] == 1;
  }

  void resample(int e, State& s, Rng& rng) const {
    if (!holds(e, s)) throw OracleError("chain-streak oracle called on event " + std::to_string(e) + " that does not hold");
    if (e < k_) {
      s[var_x(e)] = fair_bit(rng);
    } else if (e < event_w()) {
      const int i = (e - k_) / l_;
      const int j = (e - k_) % l_;
      const unsigned char x = s[var_x(i)];
      s[var_x(i)] = s[var_z(i)];
      s[var_y(i, j)] = fair_bit(rng);
      s[var_z(i)] = x;
    } else {
      s[var_w()] = s[var_z(0)];
      for (int i = 0; i + 1 < k_; ++i) s[var_z(i)] = s[var_z(i + 1)];
      s[var_z(k_ - 1)] = fair_bit(rng);
    }
  }

  bool adjacent(int a, int b) const {
    if (a > b) std::swap(a, b);
    if (a >= k_ || b < k_ || b >= event_w()) return false;
    return (b - k_) / l_ == a;
  }

  std::vector<int> occurring(const State& s) const {
    std::vector<int> out;
    for (int e = 0; e < num_events(); ++e)
      if (holds(e, s)) out.push_back(e);
    return out;
  }

  DependencyGraph graph() const {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < k_; ++i)
      for (int j = 0; j < l_; ++j) edges.emplace_back(event_x(i), event_y(i, j));
    return DependencyGraph(num_events(), edges);
  }

  double probability(int) const { return 0.5; }

 private:
  int k_;
  int l_;
};

/// Lower bound 1/4 (1 - 2^-(l+1))^(k-2) on the probability of a streak of at
/// least k consecutive E' resamplings.
inline double chain_streak_bound(int k, int l) {
  return 0.25 * std::pow(1 - std::pow(2.0, -(l + 1)), k - 2);
}

struct StreakReport {
  int k = 0;
  int l = 0;
  std::uint64_t seed = 0;
  std::uint64_t runs = 0;
  std::uint64_t budget_exhausted = 0;
  /// streak length -> number of runs whose longest E' streak has that length
  std::map<std::size_t, std::uint64_t> histogram;

  std::uint64_t count_at_least(std::size_t len) const {
    std::uint64_t c = 0;
    for (auto it = histogram.lower_bound(len); it != histogram.end(); ++it) c += it->second;
    return c;
  }
  double frequency_at_least(std::size_t len) const {
    return runs == 0 ? 0.0 : static_cast<double>(count_at_least(len)) / static_cast<double>(runs);
  }
};

/// Runs MaximalSetResample `runs` times (run r uses derive_seed(seed, r)) and
/// records the longest streak of consecutive iterations resampling E'. Runs
/// that exhaust the budget are counted separately and left out of the
/// histogram.
inline StreakReport measure_consecutive_runs(const ChainStreakBundle& b, std::uint64_t runs, std::uint64_t seed,
                                             std::uint64_t budget = 1'000'000, unsigned jobs = 1) {
  StreakReport rep;
  rep.k = b.k();
  rep.l = b.l();
  rep.seed = seed;
  rep.runs = runs;
  std::vector<long long> streak(runs, -1);
  EngineOptions opt;
  opt.max_resamples = budget;
  detail::parallel_for(runs, jobs, [&](std::size_t r) {
    const auto res = maximal_set_resample(b, derive_seed(seed, r), opt);
    if (res.log.terminated) streak[r] = static_cast<long long>(longest_streak(res.log, b.event_w()));
  });
  for (long long s : streak) {
    if (s < 0) {
      ++rep.budget_exhausted;
    } else {
      ++rep.histogram[static_cast<std::size_t>(s)];
    }
  }
  return rep;
}

}  // namespace lll
