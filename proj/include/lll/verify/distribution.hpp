#pragma once

// Statistical checks of the two resampling-oracle axioms against an exactly
// enumerated target distribution.

#include <boost/math/distributions/chi_squared.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "lll/detail/parallel.hpp"
#include "lll/engine.hpp"
#include "lll/error.hpp"
#include "lll/rng.hpp"

namespace lll {

inline constexpr double kDefaultSignificance = 1e-6;
inline constexpr std::uint64_t kRejectionBudget = 100'000'000;

struct DistributionTestReport {
  std::size_t support_size = 0;
  std::uint64_t samples = 0;
  std::uint64_t out_of_support = 0;  // draws landing on zero-probability states
  double max_abs_deviation = 0;       // max over states of |freq - prob|
  double chi_square = 0;
  double degrees_of_freedom = 0;
  double threshold = 0;  // chi-square quantile at 1 - significance
  double significance = kDefaultSignificance;
  bool pass = false;
};

/// Chi-square goodness of fit of `counts` against `target` (probabilities
/// summing to 1). Cells with zero target probability must stay empty.
inline DistributionTestReport chi_square_test(std::span<const std::uint64_t> counts, std::span<const double> target,
                                              double significance = kDefaultSignificance) {
  if (counts.size() != target.size()) throw Error("count and target sizes differ");
  DistributionTestReport r;
  r.significance = significance;
  for (auto c : counts) r.samples += c;
  if (r.samples == 0) throw Error("distribution test with no samples");
  const double n = static_cast<double>(r.samples);
  std::size_t cells = 0;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    const double freq = static_cast<double>(counts[k]) / n;
    r.max_abs_deviation = std::max(r.max_abs_deviation, std::abs(freq - target[k]));
    if (target[k] <= 0) {
      r.out_of_support += counts[k];
      continue;
    }
    ++cells;
    const double expected = n * target[k];
    const double d = static_cast<double>(counts[k]) - expected;
    r.chi_square += d * d / expected;
  }
  r.support_size = cells;
  r.degrees_of_freedom = static_cast<double>(cells > 1 ? cells - 1 : 1);
  r.threshold = boost::math::quantile(boost::math::chi_squared(r.degrees_of_freedom), 1 - significance);
  r.pass = r.out_of_support == 0 && (cells <= 1 || r.chi_square <= r.threshold);
  return r;
}

/// Draws from mu conditioned on E_i by rejection.
template <ResamplingBundle B>
typename B::State sample_conditioned(const B& b, int i, Rng& rng, std::uint64_t budget = kRejectionBudget) {
  for (std::uint64_t k = 0; k < budget; ++k) {
    auto s = b.sample(rng);
    if (b.holds(i, s)) return s;
  }
  throw Error("event " + std::to_string(i) + " never sampled within the rejection budget");
}

/// Output histogram of the oracle for E_i started from omega ~ mu | E_i.
/// `index` maps a state to its position in an enumeration of `size` states.
template <ResamplingBundle B, class Index>
std::vector<std::uint64_t> r1_counts(const B& b, int i, std::size_t size, Index index, std::uint64_t samples, Rng& rng,
                                     const std::function<void(const typename B::State&)>& observe = {}) {
  std::vector<std::uint64_t> counts(size, 0);
  std::uint64_t rejections = 0;
  for (std::uint64_t t = 0; t < samples; ++t) {
    typename B::State s = b.sample(rng);
    while (!b.holds(i, s)) {
      if (++rejections > kRejectionBudget)
        throw Error("event " + std::to_string(i) + " never sampled within the rejection budget");
      s = b.sample(rng);
    }
    b.resample(i, s, rng);
    const std::size_t k = index(s);
    if (k >= counts.size()) throw Error("oracle output outside the enumerated space");
    ++counts[k];
    if (observe) observe(s);
  }
  return counts;
}

/// (R1): draws omega ~ mu | E_i, applies the oracle, and compares the output
/// histogram with `target` (the exact mu over an enumeration of the space).
/// `observe`, when given, sees every output state.
template <ResamplingBundle B, class Index>
DistributionTestReport test_r1(const B& b, int i, std::span<const double> target, Index index, std::uint64_t samples,
                               Rng& rng, double significance = kDefaultSignificance,
                               const std::function<void(const typename B::State&)>& observe = {}) {
  if (samples == 0) throw InputError("samples must be positive");
  const auto counts = r1_counts(b, i, target.size(), index, samples, rng, observe);
  return chi_square_test(counts, target, significance);
}

/// Sample count per independently seeded chunk in the chunked tests; fixed
/// so results do not depend on the number of worker threads.
inline constexpr std::uint64_t kChunkSamples = 65536;

namespace detail {

inline std::uint64_t chunk_count(std::uint64_t samples) { return (samples + kChunkSamples - 1) / kChunkSamples; }

inline std::uint64_t chunk_size(std::uint64_t samples, std::uint64_t c) {
  return std::min(kChunkSamples, samples - c * kChunkSamples);
}

}  // namespace detail

/// Histogram as in r1_counts, split into chunks seeded by derive_seed(seed, c)
/// and run on `jobs` threads.
template <ResamplingBundle B, class Index>
std::vector<std::uint64_t> r1_counts_chunked(const B& b, int i, std::size_t size, Index index, std::uint64_t samples,
                                             std::uint64_t seed, unsigned jobs) {
  const auto chunks = detail::chunk_count(samples);
  std::vector<std::vector<std::uint64_t>> parts(chunks);
  detail::parallel_for(chunks, jobs, [&](std::size_t c) {
    Rng rng(derive_seed(seed, c));
    parts[c] = r1_counts(b, i, size, index, detail::chunk_size(samples, c), rng);
  });
  std::vector<std::uint64_t> counts(size, 0);
  for (const auto& p : parts)
    for (std::size_t k = 0; k < size; ++k) counts[k] += p[k];
  return counts;
}

/// (R2): for each trial, draws omega ~ mu | E_i, resamples E_i, and counts the
/// events j outside Gamma+(i) that went from absent to present.
template <ResamplingBundle B>
std::uint64_t test_r2(const B& b, int i, std::uint64_t trials, Rng& rng) {
  std::vector<int> others;
  for (int j = 0; j < b.num_events(); ++j)
    if (j != i && !b.adjacent(i, j)) others.push_back(j);
  std::uint64_t violations = 0;
  std::vector<char> before(others.size());
  for (std::uint64_t t = 0; t < trials; ++t) {
    auto s = sample_conditioned(b, i, rng);
    for (std::size_t k = 0; k < others.size(); ++k) before[k] = b.holds(others[k], s);
    b.resample(i, s, rng);
    for (std::size_t k = 0; k < others.size(); ++k)
      if (!before[k] && b.holds(others[k], s)) ++violations;
  }
  return violations;
}

/// test_r2 split into chunks seeded by derive_seed(seed, c).
template <ResamplingBundle B>
std::uint64_t test_r2_chunked(const B& b, int i, std::uint64_t trials, std::uint64_t seed, unsigned jobs) {
  const auto chunks = detail::chunk_count(trials);
  std::vector<std::uint64_t> parts(chunks, 0);
  detail::parallel_for(chunks, jobs, [&](std::size_t c) {
    Rng rng(derive_seed(seed, c));
    parts[c] = test_r2(b, i, detail::chunk_size(trials, c), rng);
  });
  std::uint64_t total = 0;
  for (auto v : parts) total += v;
  return total;
}

/// Standard error of a binomial frequency.
inline double binomial_std_error(double p, std::uint64_t trials) {
  return std::sqrt(std::max(p * (1 - p), 0.0) / static_cast<double>(trials));
}

}  // namespace lll
