#pragma once

// Monte Carlo generators used as oracles: 1/k sampling for Benford's law,
// synthetic RGF corpora, and the empirical rank ladder of exponentially
// sized groups.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "fll/compare.hpp"
#include "fll/corpus.hpp"
#include "fll/digits.hpp"
#include "fll/laws.hpp"
#include "fll/random.hpp"
#include "fll/rgf.hpp"

namespace fll {

struct IntegerRange {
  std::uint64_t min = 1;
  std::uint64_t max = 9;
};

struct SamplerConfig {
  std::uint64_t seed = 0;
  std::uint64_t draws = 1;
  int base = 10;
  int decades = 6;                    // support [1, base^decades) when no range is given
  std::optional<IntegerRange> range;  // inclusive
};

/// True when [min, max] covers whole decades: min = B^a and max + 1 = B^(a+D).
inline bool decade_aligned(const IntegerRange& range, int base) {
  const auto b = static_cast<std::uint64_t>(base);
  const auto power_of_base = [b](std::uint64_t v) {
    if (v == 0) return false;
    while (v % b == 0) v /= b;
    return v == 1;
  };
  return power_of_base(range.min) && power_of_base(range.max + 1) && range.max + 1 > range.min;
}

struct ReciprocalSummary {
  std::uint64_t draws = 0;
  bool decade_aligned = true;  // false: Benford is no longer exact in expectation
};

/// Draws integers with P(k) proportional to 1/k: a continuous log-uniform
/// value on [lo, hi) truncated to an integer, which keeps the leading digit.
template <class Sink>
ReciprocalSummary sample_reciprocal(const SamplerConfig& config, Sink&& sink) {
  if (config.draws < 1) throw domain_error("sample_reciprocal: draws must be >= 1");
  if (config.base < 2) throw domain_error("sample_reciprocal: base must be >= 2");

  double lo = 1.0, hi;
  ReciprocalSummary summary;
  if (config.range) {
    if (config.range->min < 1 || config.range->max <= config.range->min)
      throw domain_error("sample_reciprocal: need 1 <= k_min < k_max");
    lo = static_cast<double>(config.range->min);
    hi = static_cast<double>(config.range->max) + 1.0;
    summary.decade_aligned = decade_aligned(*config.range, config.base);
  } else {
    if (config.decades < 1) throw domain_error("sample_reciprocal: decades must be >= 1");
    hi = std::pow(static_cast<double>(config.base), config.decades);
  }
  const double log_lo = std::log(lo);
  const double log_span = std::log(hi) - log_lo;
  const auto top = static_cast<std::uint64_t>(hi) - 1;

  Xoshiro256 rng(config.seed);
  for (std::uint64_t i = 0; i < config.draws; ++i) {
    const double x = std::exp(log_lo + rng.uniform() * log_span);
    sink(std::min(static_cast<std::uint64_t>(x), top));
  }
  summary.draws = config.draws;
  return summary;
}

inline std::vector<std::uint64_t> sample_reciprocal(const SamplerConfig& config) {
  std::vector<std::uint64_t> out;
  out.reserve(config.draws);
  sample_reciprocal(config, [&](std::uint64_t k) { out.push_back(k); });
  return out;
}

/// N group sizes drawn i.i.d. from the RGF pmf by inverse CDF.
inline FrequencyDistribution sample_rgf_corpus(const RgfParams& params, std::uint64_t groups, std::uint64_t seed) {
  if (groups < 1) throw domain_error("sample_rgf_corpus: need at least one group");
  std::vector<double> cdf = rgf_table(params);
  std::partial_sum(cdf.begin(), cdf.end(), cdf.begin());
  const double total = cdf.back();
  if (!(total > 0.0)) throw domain_error("sample_rgf_corpus: parameters are not normalizable");

  Xoshiro256 rng(seed);
  FrequencyDistribution::Groups counts;
  for (std::uint64_t g = 0; g < groups; ++g) {
    const double u = rng.uniform() * total;
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    const auto k = static_cast<std::uint64_t>(std::min<std::ptrdiff_t>(it - cdf.begin(), cdf.size() - 1)) + 1;
    ++counts[k];
  }
  return FrequencyDistribution(std::move(counts));
}

/// Geometric variate on k >= 1 with P(k) proportional to exp(-b k).
inline std::uint64_t sample_exponential_size(Xoshiro256& rng, double decay) {
  const double u = rng.uniform();
  return 1 + static_cast<std::uint64_t>(std::floor(std::log1p(-u) / -decay));
}

/// Mean group size at each rank (largest first) over `trials` sets of N
/// exponentially sized groups.
inline std::vector<double> ladder_oracle(std::size_t groups, double decay, std::uint64_t trials, std::uint64_t seed) {
  if (groups < 1) throw domain_error("ladder_oracle: need at least one group");
  if (trials < 1) throw domain_error("ladder_oracle: trials must be >= 1");
  if (!(decay > 0.0)) throw domain_error("ladder_oracle: decay must be positive");

  Xoshiro256 rng(seed);
  std::vector<double> sums(groups, 0.0);
  std::vector<std::uint64_t> sizes(groups);
  for (std::uint64_t t = 0; t < trials; ++t) {
    for (auto& k : sizes) k = sample_exponential_size(rng, decay);
    std::sort(sizes.begin(), sizes.end(), std::greater<>());
    for (std::size_t i = 0; i < groups; ++i) sums[i] += static_cast<double>(sizes[i]);
  }
  for (double& s : sums) s /= static_cast<double>(trials);
  return sums;
}

struct MseRow {
  std::uint64_t draws = 0;
  std::uint64_t repeat = 0;
  double mse = 0.0;
};

struct MseExperiment {
  std::vector<MseRow> rows;
  double mean_mse = 0.0;
};

/// Repeats sample -> first-digit histogram -> MSE against Benford.  Repeat r
/// uses seed derive_seed(seed, r).
inline MseExperiment first_digit_mse_experiment(std::uint64_t draws, std::uint64_t repeats, std::uint64_t seed,
                                                int base = 10, int decades = 6) {
  if (draws < 1 || repeats < 1) throw domain_error("first_digit_mse_experiment: draws and repeats must be >= 1");
  const RankedDistribution benford = benford_prediction(base);
  MseExperiment out;
  out.rows.reserve(repeats);
  for (std::uint64_t r = 0; r < repeats; ++r) {
    SamplerConfig config;
    config.seed = derive_seed(seed, r);
    config.draws = draws;
    config.base = base;
    config.decades = decades;
    DigitHistogram hist(base);
    sample_reciprocal(config, [&](std::uint64_t k) { hist.add_integer(k); });
    const double mse = compare(hist.distribution(), benford).mse;
    out.rows.push_back({draws, r, mse});
    out.mean_mse += mse;
  }
  out.mean_mse /= static_cast<double>(repeats);
  return out;
}

}  // namespace fll
