#pragma once

// Random Group Formation: the maximum-entropy distribution of group sizes
//
//   P(k) = A exp(-b k) / k^gamma,        k = 1, 2, ..., K
//
// fitted to a corpus through three constraints:
//
//   C1  sum_k P(k) = 1
//   C2  sum_k k P(k) = M / N
//   C3  the expected size of the largest of N groups equals k_max.  For N
//       independent draws with tail T(k) = sum_{j >= k} P(j),
//       E[max] = sum_k 1 - (1 - T(k))^N.
//
// The generalized form replaces 1/k^gamma by (f(k)/k)^gamma, where f(k) is
// the meanings multiplicity of truncated words.  f == 1 gives the plain model
// and f == k a pure exponential.
//
// The support K is min(M, 10^7); terms are dropped once they fall below
// 1e-15 of the running sum and are decreasing.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fll/corpus.hpp"
#include "fll/distribution.hpp"
#include "fll/meanings.hpp"

namespace fll {

struct RgfParams {
  double A = 1.0;
  double b = 0.0;
  double gamma = 0.0;
  std::uint64_t support = 1;  // P(k) = 0 for k > support
  MeaningsCurve meanings;     // trivial: f == 1
};

inline double rgf_pmf(const RgfParams& params, std::uint64_t k) {
  if (k < 1 || k > params.support) return 0.0;
  const double kk = static_cast<double>(k);
  return params.A * std::exp(-params.b * kk - params.gamma * std::log(kk / params.meanings.at(kk)));
}

struct RgfFit {
  RgfParams params;
  // Relative residuals of C1 (normalization), C2 (mean), C3 (top group).
  std::array<double, 3> residuals{};
  int iterations = 0;
  double top_group_mean = 0.0;
  // False when gamma has no effect on the pmf (f(k) == k everywhere), in which
  // case C3 cannot be tuned and is only reported.
  bool top_group_enforced = true;
};

class fit_error : public std::runtime_error {
public:
  fit_error(const std::string& what, std::array<double, 3> residuals)
      : std::runtime_error(what), residuals_(residuals) {}
  [[nodiscard]] const std::array<double, 3>& residuals() const noexcept { return residuals_; }

private:
  std::array<double, 3> residuals_;
};

struct RgfSearchBox {
  double gamma_min = -2.0;
  double gamma_max = 5.0;
  double b_min = 1e-12;
  double b_max = 10.0;
  double tolerance = 1e-6;
};

inline constexpr std::uint64_t rgf_support_cap = 10'000'000;

namespace detail {

// ln(k / f(k)) per k, extended on demand, and the sums over the weights
// exp(-b k - gamma ln(k / f(k))).
class RgfSums {
public:
  RgfSums(std::uint64_t support, MeaningsCurve meanings) : support_(support), meanings_(std::move(meanings)) {
    if (!meanings_.trivial()) {
      gamma_irrelevant_ = true;
      for (std::uint64_t k = 1; k <= support_ && gamma_irrelevant_; ++k)
        gamma_irrelevant_ = shape(k) == 0.0;
    }
  }

  [[nodiscard]] std::uint64_t support() const noexcept { return support_; }
  [[nodiscard]] bool gamma_irrelevant() const noexcept { return gamma_irrelevant_; }

  double shape(std::uint64_t k) const {
    while (shape_.size() < k) {
      const double kk = static_cast<double>(shape_.size() + 1);
      shape_.push_back(std::log(kk / meanings_.at(kk)));
    }
    return shape_[k - 1];
  }

  struct Moments {
    double z = 0.0;
    double mean = 0.0;
    double variance = 0.0;
    std::size_t terms = 0;
  };

  Moments moments(double b, double gamma) const {
    double z = 0.0, s1 = 0.0, s2 = 0.0;
    double previous = std::numeric_limits<double>::infinity();
    std::size_t k = 1;
    for (; k <= support_; ++k) {
      const double kk = static_cast<double>(k);
      const double w = std::exp(-b * kk - gamma * shape(k));
      z += w;
      s1 += kk * w;
      s2 += kk * kk * w;
      if (w < 1e-15 * z && w < previous) break;
      previous = w;
    }
    Moments m;
    m.z = z;
    m.mean = s1 / z;
    m.variance = std::max(0.0, s2 / z - m.mean * m.mean);
    m.terms = std::min<std::size_t>(k, support_);
    return m;
  }

  /// Probabilities for k = 1..terms, normalized.
  std::vector<double> probabilities(double b, double gamma, std::size_t terms) const {
    std::vector<double> p(terms);
    double z = 0.0;
    for (std::size_t k = 1; k <= terms; ++k) {
      p[k - 1] = std::exp(-b * static_cast<double>(k) - gamma * shape(k));
      z += p[k - 1];
    }
    for (double& v : p) v /= z;
    return p;
  }

  double top_group_mean(double b, double gamma, double groups, std::size_t terms) const {
    const std::vector<double> p = probabilities(b, gamma, terms);
    return top_group_mean(p, groups);
  }

  static double top_group_mean(const std::vector<double>& p, double groups) {
    double tail = 0.0, expected = 0.0;
    for (std::size_t i = p.size(); i-- > 0;) {
      tail += p[i];
      // 1 - (1 - T)^N without cancellation; T is capped just under 1
      expected += -std::expm1(groups * std::log1p(-std::min(tail, 1.0 - 1e-16)));
    }
    return expected;
  }

private:
  std::uint64_t support_;
  MeaningsCurve meanings_;
  mutable std::vector<double> shape_;  // grows on demand
  bool gamma_irrelevant_ = false;
};

struct InnerSolution {
  enum class Status { ok, gamma_too_large, gamma_too_small } status = Status::ok;
  double b = 0.0;
  RgfSums::Moments moments;
};

// Solves C2 for b at fixed gamma.  The mean falls monotonically with b, so
// the root is bracketed starting from the guess (small b means long sums, so
// the lower end of the box is only visited when needed) and then narrowed by
// bisection in ln b, taking Newton steps (d mean / d ln b = -b Var k) when
// they land inside the bracket.
inline InnerSolution solve_decay(const RgfSums& sums, double gamma, double target_mean, const RgfSearchBox& box,
                                 double guess, int& evaluations) {
  const double floor = std::log(box.b_min), ceiling = std::log(box.b_max);
  const auto eval = [&](double log_b) {
    ++evaluations;
    return sums.moments(std::exp(log_b), gamma);
  };
  InnerSolution out;

  double x = (guess > box.b_min && guess < box.b_max) ? std::log(guess) : 0.5 * (floor + ceiling);
  RgfSums::Moments m = eval(x);
  double lo, hi;
  if (m.mean > target_mean) {
    lo = x;
    hi = ceiling;
    const RgfSums::Moments at_hi = eval(hi);
    if (at_hi.mean > target_mean) {
      out.status = InnerSolution::Status::gamma_too_small;
      out.b = box.b_max;
      out.moments = at_hi;
      return out;
    }
  } else {
    hi = x;
    lo = x;
    for (double step = 1.0;; step *= 2.0) {
      lo = std::max(floor, hi - step);
      const RgfSums::Moments at_lo = eval(lo);
      if (at_lo.mean >= target_mean) break;
      hi = lo;
      if (lo == floor) {
        out.status = InnerSolution::Status::gamma_too_large;
        out.b = box.b_min;
        out.moments = at_lo;
        return out;
      }
    }
    x = 0.5 * (lo + hi);
    m = eval(x);
  }

  for (int iter = 0; iter < 200; ++iter) {
    const double residual = m.mean - target_mean;
    if (std::abs(residual) <= 1e-13 * target_mean || hi - lo < 1e-15) break;
    if (residual > 0.0) lo = x; else hi = x;
    const double slope = -std::exp(x) * m.variance;
    double next = slope < 0.0 ? x - residual / slope : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    x = next;
    m = eval(x);
  }
  out.b = std::exp(x);
  out.moments = m;
  return out;
}

inline RgfFit fit_with_meanings(std::uint64_t total, std::uint64_t groups, std::uint64_t k_max,
                                const MeaningsCurve& meanings, const RgfSearchBox& box) {
  if (groups < 2 || total < groups)
    throw domain_error("rgf_fit: need M >= N >= 2 (M=" + std::to_string(total) + ", N=" + std::to_string(groups) + ")");
  if (k_max < 1 || k_max > total)
    throw domain_error("rgf_fit: k_max must lie in 1..M (k_max=" + std::to_string(k_max) + ")");
  const double target_mean = static_cast<double>(total) / static_cast<double>(groups);
  if (static_cast<double>(k_max) < target_mean)
    throw domain_error("rgf_fit: k_max=" + std::to_string(k_max) + " is below the mean M/N=" + std::to_string(target_mean));

  const RgfSums sums(std::min<std::uint64_t>(total, rgf_support_cap), meanings);
  const double n = static_cast<double>(groups);
  const double kmax = static_cast<double>(k_max);
  int evaluations = 0;
  double guess = 1.0 / target_mean;

  struct Outer {
    double residual;
    InnerSolution inner;
  };
  const auto outer = [&](double gamma) {
    Outer o{0.0, solve_decay(sums, gamma, target_mean, box, guess, evaluations)};
    using S = InnerSolution::Status;
    if (o.inner.status == S::gamma_too_large) {
      o.residual = std::numeric_limits<double>::infinity();
    } else if (o.inner.status == S::gamma_too_small) {
      o.residual = -std::numeric_limits<double>::infinity();
    } else {
      guess = o.inner.b;
      o.residual = sums.top_group_mean(o.inner.b, gamma, n, o.inner.moments.terms) / kmax - 1.0;
    }
    return o;
  };

  const auto finish = [&](double gamma, const InnerSolution& inner, bool enforced) {
    RgfFit fit;
    fit.params.b = inner.b;
    fit.params.gamma = gamma;
    fit.params.support = inner.moments.terms;
    fit.params.meanings = meanings;
    const std::vector<double> p = sums.probabilities(inner.b, gamma, inner.moments.terms);
    fit.params.A = 1.0 / inner.moments.z;
    double norm = 0.0, mean = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      norm += p[i];
      mean += static_cast<double>(i + 1) * p[i];
    }
    fit.top_group_mean = RgfSums::top_group_mean(p, n);
    fit.residuals = {std::abs(norm - 1.0), std::abs(mean / target_mean - 1.0),
                     std::abs(fit.top_group_mean / kmax - 1.0)};
    fit.iterations = evaluations;
    fit.top_group_enforced = enforced;
    const bool ok = fit.residuals[0] < box.tolerance && fit.residuals[1] < box.tolerance &&
                    (!enforced || fit.residuals[2] < box.tolerance);
    if (!ok) throw fit_error("rgf_fit: constraints not met within tolerance", fit.residuals);
    return fit;
  };

  if (sums.gamma_irrelevant()) {
    const InnerSolution inner = solve_decay(sums, 0.0, target_mean, box, guess, evaluations);
    if (inner.status != InnerSolution::Status::ok)
      throw fit_error("rgf_fit: mean M/N unreachable with decay in search box", {0.0, 1.0, 1.0});
    return finish(0.0, inner, false);
  }

  double lo = box.gamma_min, hi = box.gamma_max;
  Outer at_lo = outer(lo);
  if (at_lo.residual > 0.0) {
    const double r = std::isfinite(at_lo.residual) ? at_lo.residual : 1.0;
    throw fit_error("rgf_fit: top group too large even at gamma=" + std::to_string(lo), {0.0, 0.0, std::abs(r)});
  }
  Outer at_hi = outer(hi);
  if (at_hi.residual < 0.0) {
    const double r = std::isfinite(at_hi.residual) ? at_hi.residual : 1.0;
    throw fit_error("rgf_fit: top group too small even at gamma=" + std::to_string(hi), {0.0, 0.0, std::abs(r)});
  }

  Outer best = std::abs(at_lo.residual) < std::abs(at_hi.residual) ? at_lo : at_hi;
  double best_gamma = std::abs(at_lo.residual) < std::abs(at_hi.residual) ? lo : hi;
  for (int iter = 0; iter < 200 && hi - lo > 1e-13; ++iter) {
    const double mid = 0.5 * (lo + hi);
    Outer o = outer(mid);
    if (std::abs(o.residual) < std::abs(best.residual)) {
      best = o;
      best_gamma = mid;
    }
    if (std::abs(o.residual) < 1e-10) break;
    if (o.residual < 0.0) lo = mid; else hi = mid;
  }
  if (best.inner.status != InnerSolution::Status::ok)
    throw fit_error("rgf_fit: no feasible decay for any gamma in the search box", {0.0, 1.0, 1.0});
  return finish(best_gamma, best.inner, true);
}

}  // namespace detail

/// Fits (A, b, gamma) to the corpus summary (M, N, k_max).
inline RgfFit rgf_fit(std::uint64_t total, std::uint64_t groups, std::uint64_t k_max, const RgfSearchBox& box = {}) {
  return detail::fit_with_meanings(total, groups, k_max, MeaningsCurve(), box);
}

inline RgfFit rgf_fit(const FrequencyDistribution& dist, const RgfSearchBox& box = {}) {
  return rgf_fit(dist.total_objects(), dist.group_count(), dist.k_max(), box);
}

/// Fits P(k) = A exp(-b k) (f(k)/k)^gamma with f taken from the profile.
inline RgfFit rgf_fit_generalized(std::uint64_t total, std::uint64_t groups, std::uint64_t k_max,
                                  const MeaningsProfile& profile, const RgfSearchBox& box = {}) {
  return detail::fit_with_meanings(total, groups, k_max, MeaningsCurve(profile), box);
}

/// N(k) predicted by the fit: N * P(k).
inline double predicted_groups(const RgfParams& params, std::uint64_t groups, std::uint64_t k) {
  return static_cast<double>(groups) * rgf_pmf(params, k);
}

/// Probabilities P(1..support) of a parameter set, for sampling and plots.
inline std::vector<double> rgf_table(const RgfParams& params) {
  std::vector<double> p(params.support);
  for (std::uint64_t k = 1; k <= params.support; ++k) p[k - 1] = rgf_pmf(params, k);
  return p;
}

/// Normalized parameters for a given (b, gamma) on support 1..support, with
/// the usual term truncation.  Used to build generating models.
inline RgfParams rgf_params(double b, double gamma, std::uint64_t support = rgf_support_cap) {
  if (b <= 0.0 && gamma <= 1.0) throw domain_error("rgf_params: b = 0 with gamma <= 1 is not normalizable");
  const detail::RgfSums sums(std::min(support, rgf_support_cap), MeaningsCurve());
  const auto m = sums.moments(b, gamma);
  RgfParams params;
  params.b = b;
  params.gamma = gamma;
  params.support = m.terms;
  params.A = 1.0 / m.z;
  return params;
}

}  // namespace fll
