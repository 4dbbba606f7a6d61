#pragma once

// Closed-form rank predictions: Benford's first-digit law for any base, the
// First-Letter Law for any alphabet size, and the exponential rank ladder the
// latter is derived from.

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "fll/distribution.hpp"

namespace fll {

namespace detail {

// x ln x with the 0 ln 0 = 0 convention.
inline double xlnx(double x) noexcept { return x == 0.0 ? 0.0 : x * std::log(x); }

inline void require_rank(std::size_t rank, std::size_t count, const char* what) {
  if (rank < 1 || rank > count)
    throw domain_error(std::string(what) + ": rank " + std::to_string(rank) + " outside 1.." +
                       std::to_string(count));
}

}  // namespace detail

/// p_i = log_B((i+1)/i) for digits i = 1..B-1, labelled by digit and kept in
/// digit order (which is also descending order).
inline RankedDistribution benford_prediction(int base) {
  if (base < 2) throw domain_error("benford_prediction: base must be >= 2, got " + std::to_string(base));
  RankedDistribution out;
  out.ordering = Ordering::by_label;
  const double log_base = std::log(static_cast<double>(base));
  out.ratios.reserve(base - 1);
  out.labels.reserve(base - 1);
  for (int digit = 1; digit < base; ++digit) {
    out.ratios.push_back(std::log1p(1.0 / digit) / log_base);
    out.labels.push_back(std::to_string(digit));
  }
  return out;
}

/// First-Letter Law for an alphabet of `alphabet_size` letters.  Returns one
/// ratio per rank, largest first, with no letter labels: the law predicts the
/// ladder of group sizes, not which letter sits on which step.  The last rank
/// is exactly zero.
inline RankedDistribution fll_prediction(int alphabet_size) {
  if (alphabet_size < 2)
    throw domain_error("fll_prediction: alphabet size must be >= 2, got " + std::to_string(alphabet_size));

  const double x = alphabet_size;
  const double ln_x = std::log(x);
  // i log_X i; exact at i = X since ln X / ln X == 1.
  const auto term = [ln_x](double i) { return i == 0.0 ? 0.0 : i * (std::log(i) / ln_x); };
  const double top = term(x - 1.0);
  const double denominator = x * (x - 1.0) * (std::log(x / (x - 1.0)) / ln_x);

  RankedDistribution out;
  out.ratios.reserve(alphabet_size);
  for (int i = 1; i <= alphabet_size; ++i) {
    const double rank = i;
    // Grouped so that the i = X numerator cancels to exactly 0.
    const double numerator = (x - term(rank)) + (term(rank - 1.0) - top);
    out.ratios.push_back(numerator / denominator);
  }
  return out;
}

/// Expected group sizes when N groups draw their sizes from exp(-b k): the
/// i-th cutoff satisfies exp(-b k_ci) = i/N and k_i is the mean size between
/// cutoffs i and i-1.
struct RankLadder {
  std::vector<double> step_sizes;  // k_1 >= k_2 >= ... >= k_N
  std::vector<double> cutoffs;     // k_c1 > k_c2 > ... > k_cN = 0
  double decay = 1.0;
  std::size_t groups = 0;

  [[nodiscard]] double step(std::size_t rank) const {
    detail::require_rank(rank, groups, "RankLadder::step");
    return step_sizes[rank - 1];
  }
};

inline RankLadder rank_ladder(std::size_t groups, double decay) {
  if (groups < 1) throw domain_error("rank_ladder: need at least one group");
  if (!(decay > 0.0) || !std::isfinite(decay)) throw domain_error("rank_ladder: decay must be positive and finite");

  const double n = static_cast<double>(groups);
  const double ln_n = std::log(n);
  RankLadder ladder;
  ladder.decay = decay;
  ladder.groups = groups;
  ladder.step_sizes.reserve(groups);
  ladder.cutoffs.reserve(groups);
  for (std::size_t i = 1; i <= groups; ++i) {
    const double rank = static_cast<double>(i);
    ladder.step_sizes.push_back((1.0 + ln_n - detail::xlnx(rank) + detail::xlnx(rank - 1.0)) / decay);
    ladder.cutoffs.push_back(std::log(n / rank) / decay);
  }
  return ladder;
}

/// (k_i - k_j) / (k_l - k_m).  Evaluated on the decay-free shape of the
/// ladder, so the result is the same for every b.
inline double step_ratio(const RankLadder& ladder, std::size_t i, std::size_t j, std::size_t l, std::size_t m) {
  for (std::size_t r : {i, j, l, m}) detail::require_rank(r, ladder.groups, "step_ratio");
  const auto shape = [](std::size_t r) {
    const double rank = static_cast<double>(r);
    return detail::xlnx(rank - 1.0) - detail::xlnx(rank);
  };
  const double denominator = shape(l) - shape(m);
  if (l == m || denominator == 0.0) throw domain_error("step_ratio: degenerate denominator (l == m)");
  return (shape(i) - shape(j)) / denominator;
}

/// Ladder steps shifted so the smallest is zero and rescaled to sum to one.
/// For N = X this is the First-Letter Law.
inline RankedDistribution normalized_ladder(const RankLadder& ladder) {
  RankedDistribution out;
  if (ladder.groups == 1) {
    out.ratios = {1.0};
    return out;
  }
  const double floor = ladder.step_sizes.back();
  double total = 0.0;
  for (double k : ladder.step_sizes) total += k - floor;
  out.ratios.reserve(ladder.groups);
  for (double k : ladder.step_sizes) out.ratios.push_back((k - floor) / total);
  return out;
}

}  // namespace fll
