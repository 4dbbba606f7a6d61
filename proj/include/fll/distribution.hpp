#pragma once

#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace fll {

// Precondition violations on numeric inputs (bad base, mismatched ranks, ...).
class domain_error : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

// How the entries of a RankedDistribution are aligned.  Rank-ordered data is
// sorted largest first; label-ordered data keeps an a-priori order (digits).
enum class Ordering { by_rank, by_label };

struct RankedDistribution {
  std::vector<double> ratios;
  std::vector<std::string> labels;  // empty, or one per rank
  Ordering ordering = Ordering::by_rank;

  [[nodiscard]] std::size_t rank_count() const noexcept { return ratios.size(); }
  [[nodiscard]] bool has_labels() const noexcept { return !labels.empty(); }

  [[nodiscard]] double sum() const noexcept {
    return std::accumulate(ratios.begin(), ratios.end(), 0.0);
  }
};

// Checks the distribution invariants: ratios in [0,1], sum within `tolerance`
// of one, labels aligned, and non-increasing ratios for rank-ordered data.
inline bool satisfies_invariants(const RankedDistribution& dist, double tolerance = 1e-12) {
  if (dist.ratios.empty()) return false;
  if (dist.has_labels() && dist.labels.size() != dist.ratios.size()) return false;
  for (std::size_t i = 0; i < dist.ratios.size(); ++i) {
    const double p = dist.ratios[i];
    if (!std::isfinite(p) || p < 0.0 || p > 1.0) return false;
    if (dist.ordering == Ordering::by_rank && i > 0 && p > dist.ratios[i - 1]) return false;
  }
  return std::abs(dist.sum() - 1.0) <= tolerance;
}

}  // namespace fll
