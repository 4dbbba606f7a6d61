#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fll/distribution.hpp"

namespace fll {

/// First significant digit of a positive finite value in the given base.
inline std::optional<int> leading_digit(double value, int base) {
  if (!(value > 0.0) || !std::isfinite(value)) return std::nullopt;
  const double b = base;
  const int exponent = static_cast<int>(std::floor(std::log(value) / std::log(b)));
  // Multiply rather than divide for negative exponents: 0.7 * 10 is exactly 7.
  double mantissa = exponent >= 0 ? value / std::pow(b, exponent) : value * std::pow(b, -exponent);
  while (mantissa >= b) mantissa /= b;
  while (mantissa < 1.0) mantissa *= b;
  const int digit = static_cast<int>(mantissa);
  return digit < 1 ? 1 : (digit >= base ? base - 1 : digit);
}

/// Counts of leading digits 1..base-1.  Values that are not positive finite
/// numbers are skipped and counted.
struct DigitHistogram {
  int base = 10;
  std::vector<std::uint64_t> counts;  // index d-1 holds digit d
  std::uint64_t accepted = 0;
  std::uint64_t skipped = 0;

  explicit DigitHistogram(int b) : base(b) {
    if (b < 2) throw domain_error("digit histogram: base must be >= 2, got " + std::to_string(b));
    counts.assign(static_cast<std::size_t>(b - 1), 0);
  }

  void add(double value) {
    if (const auto digit = leading_digit(value, base)) {
      ++counts[static_cast<std::size_t>(*digit - 1)];
      ++accepted;
    } else {
      ++skipped;
    }
  }

  void add_integer(std::uint64_t value) {
    if (value == 0) {
      ++skipped;
      return;
    }
    const auto b = static_cast<std::uint64_t>(base);
    while (value >= b) value /= b;
    ++counts[value - 1];
    ++accepted;
  }

  /// Ratios in digit order (not re-sorted), labelled by digit.
  [[nodiscard]] RankedDistribution distribution() const {
    if (accepted == 0) throw domain_error("digit histogram: no valid values");
    RankedDistribution out;
    out.ordering = Ordering::by_label;
    for (std::size_t i = 0; i < counts.size(); ++i) {
      out.ratios.push_back(static_cast<double>(counts[i]) / static_cast<double>(accepted));
      out.labels.push_back(std::to_string(i + 1));
    }
    return out;
  }
};

inline DigitHistogram first_digit_histogram(std::span<const double> values, int base) {
  DigitHistogram hist(base);
  for (double v : values) hist.add(v);
  return hist;
}

/// Numbers from text: one per line, or column `column` (1-based) of a
/// delimited file.  Unparseable fields become NaN so the histogram counts them
/// as skipped.
inline std::vector<double> read_numbers(std::istream& in, std::size_t column = 0, char delimiter = ',') {
  std::vector<double> values;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string field = line;
    if (column > 0) {
      std::size_t start = 0;
      for (std::size_t i = 1; i < column && start != std::string::npos; ++i) {
        start = line.find(delimiter, start);
        if (start != std::string::npos) ++start;
      }
      if (start == std::string::npos) {
        values.push_back(std::nan(""));
        continue;
      }
      const std::size_t stop = line.find(delimiter, start);
      field = line.substr(start, stop == std::string::npos ? std::string::npos : stop - start);
    }
    const auto first = field.find_first_not_of(" \t\"");
    const auto last = field.find_last_not_of(" \t\"");
    if (first == std::string::npos) {
      if (column == 0) continue;  // blank line
      values.push_back(std::nan(""));
      continue;
    }
    field = field.substr(first, last - first + 1);
    double value = 0.0;
    const auto parsed = std::from_chars(field.data(), field.data() + field.size(), value);
    const bool ok = parsed.ec == std::errc() && parsed.ptr == field.data() + field.size();
    values.push_back(ok ? value : std::nan(""));
  }
  return values;
}

}  // namespace fll
