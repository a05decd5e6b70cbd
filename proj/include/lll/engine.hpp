#pragma once

// MaximalSetResample over an abstract resampling-oracle bundle.
//
// Each outer iteration greedily builds a maximal independent set of occurring
// events, always taking the minimum eligible index and resampling it at once.
// The run stops after an iteration that resamples nothing.

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "lll/error.hpp"
#include "lll/graph.hpp"
#include "lll/rng.hpp"

namespace lll {

template <class B>
concept ResamplingBundle = requires(const B& b, int i, typename B::State& s, Rng& rng) {
  typename B::State;
  { b.num_events() } -> std::convertible_to<int>;
  { b.sample(rng) } -> std::same_as<typename B::State>;
  { b.holds(i, std::as_const(s)) } -> std::convertible_to<bool>;
  { b.resample(i, s, rng) };
  { b.adjacent(i, i) } -> std::convertible_to<bool>;
};

/// Bundles that can list their occurring events faster than probing each one.
template <class B>
concept ListsOccurring = requires(const B& b, const typename B::State& s) {
  { b.occurring(s) } -> std::convertible_to<std::vector<int>>;
};

struct RunLog {
  std::uint64_t seed = 0;
  std::vector<std::vector<int>> iterations;
  std::uint64_t total_resamples = 0;
  bool terminated = false;

  /// Number of iterations that resampled something.
  std::size_t proper_iterations() const {
    std::size_t k = 0;
    for (const auto& it : iterations)
      if (!it.empty()) ++k;
    return k;
  }
};

enum class ScanPolicy {
  /// One ascending pass per iteration. Exact whenever the oracles satisfy
  /// (R2) for the bundle's graph: an event outside the closed neighborhood of
  /// the current set cannot start to hold, so the minimum eligible index only
  /// grows within an iteration.
  kSinglePass,
  /// Rescan from index 0 after every resample, as literally written.
  kLiteral,
};

struct EngineOptions {
  std::uint64_t max_resamples = 1'000'000;
  ScanPolicy scan = ScanPolicy::kSinglePass;
};

template <ResamplingBundle B>
struct RunResult {
  typename B::State state;
  RunLog log;
};

namespace detail {

template <ResamplingBundle B>
bool blocked(const B& bundle, int i, std::span<const int> chosen) {
  for (int j : chosen)
    if (j == i || bundle.adjacent(i, j)) return true;
  return false;
}

}  // namespace detail

template <ResamplingBundle B>
RunResult<B> maximal_set_resample(const B& bundle, std::uint64_t seed, const EngineOptions& opt = {}) {
  if (opt.max_resamples == 0) throw InputError("max_resamples must be positive");
  Rng rng(seed);
  RunResult<B> out{bundle.sample(rng), RunLog{}};
  RunLog& log = out.log;
  log.seed = seed;
  const int n = bundle.num_events();
  auto& state = out.state;

  // Returns false once the budget would be exceeded.
  auto take = [&](int i, std::vector<int>& chosen) {
    if (log.total_resamples >= opt.max_resamples) return false;
    bundle.resample(i, state, rng);
    ++log.total_resamples;
    chosen.push_back(i);
    return true;
  };

  for (;;) {
    std::vector<int> chosen;
    bool ok = true;
    if (opt.scan == ScanPolicy::kSinglePass) {
      auto visit = [&](int i) {
        if (!bundle.holds(i, std::as_const(state))) return true;
        if (detail::blocked(bundle, i, chosen)) return true;
        return take(i, chosen);
      };
      if constexpr (ListsOccurring<B>) {
        // Events that start to hold mid-iteration are neighbors of the chosen
        // set under (R2), so the list taken at iteration start suffices.
        for (int i : bundle.occurring(std::as_const(state)))
          if (!(ok = visit(i))) break;
      } else {
        for (int i = 0; i < n && ok; ++i) ok = visit(i);
      }
    } else {
      for (bool progress = true; progress && ok;) {
        progress = false;
        for (int i = 0; i < n; ++i) {
          if (detail::blocked(bundle, i, chosen)) continue;
          if (!bundle.holds(i, std::as_const(state))) continue;
          ok = take(i, chosen);
          progress = ok;
          break;
        }
      }
    }
    const bool empty = chosen.empty();
    log.iterations.push_back(std::move(chosen));
    if (!ok) {
      log.terminated = false;
      return out;
    }
    if (empty) {
      log.terminated = true;
      return out;
    }
  }
}

/// True iff the run resampled exactly seq's sets in its first t-1 iterations
/// and seq's last set is the set of the first |I_t| events resampled in
/// iteration t.
inline bool log_follows(const RunLog& log, const StableSetSequence& seq) {
  const std::size_t t = seq.sets.size();
  if (t == 0) return true;
  if (log.iterations.size() < t) return false;
  auto same_set = [](std::vector<int> a, std::vector<int> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
  };
  for (std::size_t s = 0; s + 1 < t; ++s)
    if (!same_set(log.iterations[s], seq.sets[s])) return false;
  const auto& last = seq.sets[t - 1];
  const auto& it = log.iterations[t - 1];
  if (last.size() > it.size()) return false;
  return same_set(std::vector<int>(it.begin(), it.begin() + static_cast<std::ptrdiff_t>(last.size())), last);
}

/// Length of the longest run of consecutive iterations that all resample
/// event `e`.
inline std::size_t longest_streak(const RunLog& log, int e) {
  std::size_t best = 0, cur = 0;
  for (const auto& it : log.iterations) {
    if (std::find(it.begin(), it.end(), e) != it.end()) {
      best = std::max(best, ++cur);
    } else {
      cur = 0;
    }
  }
  return best;
}

}  // namespace lll
