#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "fll/distribution.hpp"

namespace fll {

/// Per-rank residuals (observed - predicted) and their mean square over all
/// R ranks.
struct ComparisonReport {
  RankedDistribution observed;
  RankedDistribution predicted;
  std::vector<double> residuals;
  double mse = 0.0;

  [[nodiscard]] std::size_t rank_count() const noexcept { return residuals.size(); }
};

/// Aligns entry by entry.  Rank-ordered inputs are compared rank against
/// rank; label-ordered inputs (digits) must carry the same labels.
inline ComparisonReport compare(const RankedDistribution& observed, const RankedDistribution& predicted) {
  if (observed.rank_count() != predicted.rank_count())
    throw domain_error("compare: rank counts differ (" + std::to_string(observed.rank_count()) + " vs " +
                       std::to_string(predicted.rank_count()) + ")");
  if (observed.rank_count() == 0) throw domain_error("compare: empty distributions");
  if (observed.ordering == Ordering::by_label && predicted.ordering == Ordering::by_label &&
      observed.has_labels() && predicted.has_labels() && observed.labels != predicted.labels)
    throw domain_error("compare: label-aligned distributions carry different labels");

  ComparisonReport report{observed, predicted, {}, 0.0};
  report.residuals.reserve(observed.rank_count());
  double sum = 0.0;
  for (std::size_t i = 0; i < observed.rank_count(); ++i) {
    const double r = observed.ratios[i] - predicted.ratios[i];
    report.residuals.push_back(r);
    sum += r * r;
  }
  report.mse = sum / static_cast<double>(observed.rank_count());
  return report;
}

}  // namespace fll
