#pragma once

// Meanings multiplicity under word truncation.
//
// Cutting every word to its first L letters merges distinct words into one
// form.  For a form that occurs k times, its multiplicity is the number of
// distinct source words it stands for; f(k) is the mean multiplicity over all
// forms that occur exactly k times.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fll/corpus.hpp"
#include "fll/utf8.hpp"

namespace fll {

struct MeaningsProfile {
  std::size_t truncation_length = 1;
  std::map<std::uint64_t, double> values;  // k -> f(k)
};

inline MeaningsProfile meanings_profile(const CorpusStats& stats, std::size_t truncation_length) {
  if (truncation_length < 1) throw domain_error("meanings_profile: truncation length must be >= 1");

  struct Form {
    std::uint64_t occurrences = 0;
    std::uint64_t sources = 0;
  };
  std::map<std::string_view, Form> forms;
  for (const auto& [word, count] : stats.word_counts()) {
    Form& form = forms[utf8::prefix(word, truncation_length)];
    form.occurrences += count;
    ++form.sources;
  }

  std::map<std::uint64_t, std::pair<std::uint64_t, std::uint64_t>> by_k;  // k -> (sum of m, forms)
  for (const auto& entry : forms) {
    auto& slot = by_k[entry.second.occurrences];
    slot.first += entry.second.sources;
    ++slot.second;
  }

  MeaningsProfile profile;
  profile.truncation_length = truncation_length;
  for (const auto& [k, slot] : by_k)
    profile.values.emplace(k, static_cast<double>(slot.first) / static_cast<double>(slot.second));
  return profile;
}

/// f(k) on the whole support, built from a profile's sparse points.
///
/// Between observed points f is interpolated linearly in ln k.  Below the
/// first point f is held constant; above the last point it follows the
/// log-log slope of the last segment, clamped to [0, 1], so f == 1 and
/// f == k both extend as themselves.  Every value is clamped to [1, k].
class MeaningsCurve {
public:
  MeaningsCurve() = default;

  explicit MeaningsCurve(const MeaningsProfile& profile) {
    points_.reserve(profile.values.size());
    for (const auto& [k, f] : profile.values) points_.push_back({static_cast<double>(k), f});
    if (points_.size() >= 2) {
      const Point& a = points_[points_.size() - 2];
      const Point& b = points_.back();
      tail_slope_ = (std::log(b.f) - std::log(a.f)) / (std::log(b.k) - std::log(a.k));
      tail_slope_ = std::clamp(tail_slope_, 0.0, 1.0);
    }
  }

  [[nodiscard]] bool trivial() const noexcept { return points_.empty(); }

  [[nodiscard]] double at(double k) const {
    if (points_.empty()) return 1.0;
    double f;
    if (k <= points_.front().k) {
      f = points_.front().f;
    } else if (k >= points_.back().k) {
      const Point& last = points_.back();
      if (k == last.k || tail_slope_ == 0.0) {
        f = last.f;
      } else if (tail_slope_ == 1.0) {
        f = k * (last.f / last.k);  // exact when f(last) == last
      } else {
        f = last.f * std::pow(k / last.k, tail_slope_);
      }
    } else {
      const auto hi = std::upper_bound(points_.begin(), points_.end(), k,
                                       [](double value, const Point& p) { return value < p.k; });
      const auto lo = hi - 1;
      if (lo->k == k) {
        f = lo->f;
      } else {
        const double t = (std::log(k) - std::log(lo->k)) / (std::log(hi->k) - std::log(lo->k));
        f = lo->f + t * (hi->f - lo->f);
      }
    }
    return std::clamp(f, 1.0, k);
  }

private:
  struct Point {
    double k;
    double f;
  };
  std::vector<Point> points_;
  double tail_slope_ = 0.0;
};

/// Average information in bits, sum_k P(k) log2[k N(k) / f(k)] with
/// P(k) = N(k)/N.  Without a profile f == 1.
inline double information(const FrequencyDistribution& dist, const std::optional<MeaningsProfile>& profile = {}) {
  const MeaningsCurve curve = profile ? MeaningsCurve(*profile) : MeaningsCurve();
  const double groups = static_cast<double>(dist.group_count());
  double bits = 0.0;
  for (const auto& [k, n] : dist.groups()) {
    const double kk = static_cast<double>(k);
    const double nk = static_cast<double>(n);
    bits += (nk / groups) * std::log2(kk * nk / curve.at(kk));
  }
  return bits;
}

}  // namespace fll
