#pragma once

// Minimal deterministic SVG charts: rank charts on linear axes (observed as
// filled circles, prediction as open squares, observed labels along the top)
// and log-log frequency plots.  Same input, same bytes.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "fll/compare.hpp"
#include "fll/corpus.hpp"
#include "fll/distribution.hpp"
#include "fll/rgf.hpp"

namespace fll {

enum class Marker { filled_circle, open_square, filled_square, open_circle, line };

struct PlotSeries {
  std::string name;
  std::vector<std::pair<double, double>> points;
  Marker marker = Marker::filled_circle;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
  std::vector<std::string> top_labels;  // one per integer x = 1, 2, ...
};

namespace detail {

inline std::string fixed(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.2f", v);
  return buffer;
}

inline std::string escape_xml(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Axis {
  double lo, hi;
  bool log;
  double map(double v, double pixel_lo, double pixel_hi) const {
    const double a = log ? std::log10(lo) : lo;
    const double b = log ? std::log10(hi) : hi;
    const double x = log ? std::log10(v) : v;
    return pixel_lo + (x - a) / (b - a) * (pixel_hi - pixel_lo);
  }
};

inline Axis make_axis(const std::vector<PlotSeries>& series, bool use_x, bool log, bool zero_floor) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const auto& s : series)
    for (const auto& [x, y] : s.points) {
      const double v = use_x ? x : y;
      if (log && !(v > 0.0)) continue;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  if (!std::isfinite(lo)) lo = log ? 1.0 : 0.0, hi = log ? 10.0 : 1.0;
  if (log) {
    lo = std::pow(10.0, std::floor(std::log10(lo)));
    hi = std::pow(10.0, std::ceil(std::log10(hi)));
    if (hi <= lo) hi = lo * 10.0;
  } else {
    if (zero_floor) lo = std::min(lo, 0.0);
    const double pad = (hi - lo) * 0.05;
    if (!zero_floor) lo -= pad;
    hi += pad > 0.0 ? pad : 1.0;
  }
  return {lo, hi, log};
}

}  // namespace detail

inline std::string render_svg(const PlotSpec& spec, const std::vector<PlotSeries>& series) {
  constexpr double width = 640, height = 420, left = 70, right = 20, top = 50, bottom = 55;
  const double x0 = left, x1 = width - right, y0 = height - bottom, y1 = top;
  const detail::Axis ax = detail::make_axis(series, true, spec.log_x, false);
  const detail::Axis ay = detail::make_axis(series, false, spec.log_y, true);
  using detail::fixed;

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << fixed(width / 2) << "\" y=\"18\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      << "font-size=\"14\">" << detail::escape_xml(spec.title) << "</text>\n";
  svg << "<rect x=\"" << fixed(x0) << "\" y=\"" << fixed(y1) << "\" width=\"" << fixed(x1 - x0) << "\" height=\""
      << fixed(y0 - y1) << "\" fill=\"none\" stroke=\"black\"/>\n";

  // Ticks: decades on log axes, five even steps on linear ones.
  const auto ticks = [](const detail::Axis& a) {
    std::vector<double> t;
    if (a.log) {
      for (double v = a.lo; v <= a.hi * 1.0000001; v *= 10.0) t.push_back(v);
    } else {
      for (int i = 0; i <= 5; ++i) t.push_back(a.lo + (a.hi - a.lo) * i / 5.0);
    }
    return t;
  };
  for (double t : ticks(ax)) {
    const double px = ax.map(t, x0, x1);
    char label[32];
    std::snprintf(label, sizeof label, ax.log ? "%.0e" : "%.3g", t);
    svg << "<line x1=\"" << fixed(px) << "\" y1=\"" << fixed(y0) << "\" x2=\"" << fixed(px) << "\" y2=\""
        << fixed(y0 + 5) << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << fixed(px) << "\" y=\"" << fixed(y0 + 18) << "\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"10\">" << label << "</text>\n";
  }
  for (double t : ticks(ay)) {
    const double py = ay.map(t, y0, y1);
    char label[32];
    std::snprintf(label, sizeof label, ay.log ? "%.0e" : "%.3g", t);
    svg << "<line x1=\"" << fixed(x0 - 5) << "\" y1=\"" << fixed(py) << "\" x2=\"" << fixed(x0) << "\" y2=\""
        << fixed(py) << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << fixed(x0 - 8) << "\" y=\"" << fixed(py + 3) << "\" text-anchor=\"end\" "
        << "font-family=\"sans-serif\" font-size=\"10\">" << label << "</text>\n";
  }
  svg << "<text x=\"" << fixed((x0 + x1) / 2) << "\" y=\"" << fixed(height - 12)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
      << detail::escape_xml(spec.x_label) << "</text>\n";
  svg << "<text x=\"16\" y=\"" << fixed((y0 + y1) / 2) << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      << "font-size=\"12\" transform=\"rotate(-90 16 " << fixed((y0 + y1) / 2) << ")\">"
      << detail::escape_xml(spec.y_label) << "</text>\n";

  for (std::size_t i = 0; i < spec.top_labels.size(); ++i) {
    const double px = ax.map(static_cast<double>(i + 1), x0, x1);
    svg << "<text x=\"" << fixed(px) << "\" y=\"" << fixed(y1 - 6)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\" font-style=\"italic\">"
        << detail::escape_xml(spec.top_labels[i]) << "</text>\n";
  }

  for (std::size_t s = 0; s < series.size(); ++s) {
    const PlotSeries& ser = series[s];
    svg << "<g>\n";
    if (ser.marker == Marker::line) {
      svg << "<polyline fill=\"none\" stroke=\"black\" stroke-dasharray=\"6 3\" points=\"";
      bool first = true;
      for (const auto& [x, y] : ser.points) {
        if ((ax.log && !(x > 0)) || (ay.log && !(y > 0))) continue;
        svg << (first ? "" : " ") << fixed(ax.map(x, x0, x1)) << ',' << fixed(ay.map(y, y0, y1));
        first = false;
      }
      svg << "\"/>\n";
    } else {
      for (const auto& [x, y] : ser.points) {
        if ((ax.log && !(x > 0)) || (ay.log && !(y > 0))) continue;
        const double px = ax.map(x, x0, x1), py = ay.map(y, y0, y1);
        switch (ser.marker) {
          case Marker::filled_circle:
            svg << "<circle cx=\"" << fixed(px) << "\" cy=\"" << fixed(py) << "\" r=\"4\" fill=\"black\"/>\n";
            break;
          case Marker::open_circle:
            svg << "<circle cx=\"" << fixed(px) << "\" cy=\"" << fixed(py)
                << "\" r=\"4\" fill=\"none\" stroke=\"black\"/>\n";
            break;
          case Marker::open_square:
            svg << "<rect x=\"" << fixed(px - 4.5) << "\" y=\"" << fixed(py - 4.5)
                << "\" width=\"9\" height=\"9\" fill=\"none\" stroke=\"black\"/>\n";
            break;
          case Marker::filled_square:
            svg << "<rect x=\"" << fixed(px - 4) << "\" y=\"" << fixed(py - 4)
                << "\" width=\"8\" height=\"8\" fill=\"black\"/>\n";
            break;
          case Marker::line: break;
        }
      }
    }
    // Legend entry.
    const double ly = y1 + 16 + 16 * static_cast<double>(s);
    svg << "<text x=\"" << fixed(x1 - 10) << "\" y=\"" << fixed(ly)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << detail::escape_xml(ser.name)
        << "</text>\n";
    svg << "</g>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

/// Rank chart for an observed-vs-predicted comparison.
inline std::string rank_chart_svg(const ComparisonReport& report, const std::string& title) {
  PlotSeries observed{"data", {}, Marker::filled_circle};
  PlotSeries predicted{"prediction", {}, Marker::open_square};
  for (std::size_t i = 0; i < report.rank_count(); ++i) {
    observed.points.emplace_back(static_cast<double>(i + 1), report.observed.ratios[i]);
    predicted.points.emplace_back(static_cast<double>(i + 1), report.predicted.ratios[i]);
  }
  char subtitle[64];
  std::snprintf(subtitle, sizeof subtitle, " (MSE %.3g)", report.mse);
  PlotSpec spec{title + subtitle, "rank", "ratio", false, false, report.observed.labels};
  return render_svg(spec, {observed, predicted});
}

/// Overlay of two rank-ordered distributions (all-letters vs first-letters,
/// N- vs M-first-letter), both as filled markers.
inline std::string rank_overlay_svg(const RankedDistribution& first, const std::string& first_name,
                                    const RankedDistribution& second, const std::string& second_name,
                                    const std::string& title) {
  PlotSeries a{first_name, {}, Marker::filled_circle};
  PlotSeries b{second_name, {}, Marker::filled_square};
  for (std::size_t i = 0; i < first.rank_count(); ++i) a.points.emplace_back(double(i + 1), first.ratios[i]);
  for (std::size_t i = 0; i < second.rank_count(); ++i) b.points.emplace_back(double(i + 1), second.ratios[i]);
  PlotSpec spec{title, "rank", "ratio", false, false, first.labels};
  return render_svg(spec, {a, b});
}

/// log-log P(k) = N(k)/N with the fitted pmf as a broken line.
inline std::string frequency_plot_svg(const FrequencyDistribution& dist, const RgfParams* params,
                                      const std::string& title) {
  PlotSeries data{"data", {}, Marker::filled_circle};
  const double n = static_cast<double>(dist.group_count());
  for (const auto& [k, count] : dist.groups()) data.points.emplace_back(double(k), double(count) / n);
  std::vector<PlotSeries> series{data};
  if (params) {
    PlotSeries fit{"RGF", {}, Marker::line};
    // Log-spaced sample of the curve keeps the file small.
    const double top = static_cast<double>(std::max<std::uint64_t>(dist.k_max(), 2));
    std::uint64_t last = 0;
    for (int i = 0; i <= 200; ++i) {
      const auto k = static_cast<std::uint64_t>(std::llround(std::pow(top, i / 200.0)));
      if (k == last || k < 1) continue;
      last = k;
      const double p = rgf_pmf(*params, k);
      if (p > 0.0) fit.points.emplace_back(double(k), p);
    }
    series.push_back(fit);
  }
  PlotSpec spec{title, "k", "P(k)", true, true, {}};
  return render_svg(spec, series);
}

}  // namespace fll
