#pragma once

// CSV / JSON / key=value emission.  Every number goes out with 12 significant
// digits, and the JSON copy holds the same rounded value, so both files of
// one report agree exactly.  Files are written through a temporary and
// renamed into place; an OutputSet removes everything it wrote when a run
// fails.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fll/compare.hpp"
#include "fll/corpus.hpp"
#include "fll/rgf.hpp"
#include "fll/simulate.hpp"

namespace fll {

inline std::string format_number(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.12g", value);
  return buffer;
}

inline double round_significant(double value) { return std::strtod(format_number(value).c_str(), nullptr); }

// Percentage rounded to 0.1, as printed in rank tables.
inline double percent(double ratio) { return std::round(ratio * 1000.0) / 10.0; }

inline std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

namespace detail {
inline std::string label_at(const ComparisonReport& report, std::size_t i) {
  if (report.observed.has_labels()) return report.observed.labels[i];
  if (report.predicted.has_labels()) return report.predicted.labels[i];
  return "";
}
}  // namespace detail

/// rank,label,observed,predicted,residual
inline std::string rank_table_csv(const ComparisonReport& report) {
  std::ostringstream out;
  out << "rank,label,observed,predicted,residual\n";
  for (std::size_t i = 0; i < report.rank_count(); ++i) {
    out << i + 1 << ',' << csv_field(detail::label_at(report, i)) << ',' << format_number(report.observed.ratios[i])
        << ',' << format_number(report.predicted.ratios[i]) << ',' << format_number(report.residuals[i]) << '\n';
  }
  return out.str();
}

inline nlohmann::json rank_table_json(const ComparisonReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < report.rank_count(); ++i) {
    rows.push_back({{"rank", i + 1},
                    {"label", detail::label_at(report, i)},
                    {"observed", round_significant(report.observed.ratios[i])},
                    {"predicted", round_significant(report.predicted.ratios[i])},
                    {"residual", round_significant(report.residuals[i])},
                    {"observed_percent", percent(report.observed.ratios[i])},
                    {"predicted_percent", percent(report.predicted.ratios[i])}});
  }
  return {{"rank_count", report.rank_count()}, {"mse", round_significant(report.mse)}, {"rows", rows}};
}

/// rank,label,predicted,percent
inline std::string prediction_csv(const RankedDistribution& dist) {
  std::ostringstream out;
  out << "rank,label,predicted,percent\n";
  for (std::size_t i = 0; i < dist.rank_count(); ++i) {
    out << i + 1 << ',' << (dist.has_labels() ? csv_field(dist.labels[i]) : "") << ','
        << format_number(dist.ratios[i]) << ',' << format_number(percent(dist.ratios[i])) << '\n';
  }
  return out.str();
}

inline nlohmann::json prediction_json(const RankedDistribution& dist) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < dist.rank_count(); ++i)
    rows.push_back({{"rank", i + 1},
                    {"label", dist.has_labels() ? dist.labels[i] : ""},
                    {"predicted", round_significant(dist.ratios[i])},
                    {"percent", percent(dist.ratios[i])}});
  return {{"rank_count", dist.rank_count()}, {"rows", rows}};
}

/// letter,count,ratio for a histogram in alphabet order.
inline std::string histogram_csv(const LetterHistogram& hist) {
  std::ostringstream out;
  out << "letter,count,ratio\n";
  for (std::size_t i = 0; i < hist.counts.size(); ++i) {
    const double ratio = hist.total == 0 ? 0.0 : static_cast<double>(hist.counts[i]) / static_cast<double>(hist.total);
    out << csv_field(hist.letters[i]) << ',' << hist.counts[i] << ',' << format_number(ratio) << '\n';
  }
  return out.str();
}

inline nlohmann::json histogram_json(const LetterHistogram& hist) {
  nlohmann::json counts = nlohmann::json::object();
  for (std::size_t i = 0; i < hist.counts.size(); ++i) counts[hist.letters[i]] = hist.counts[i];
  return {{"mode", to_string(hist.mode)}, {"total", hist.total}, {"rejected", hist.rejected}, {"counts", counts}};
}

/// k,count,predicted where predicted = N * P(k) from the fit (empty without one).
inline std::string frequency_table_csv(const FrequencyDistribution& dist, const RgfParams* params = nullptr) {
  std::ostringstream out;
  out << "k,count,predicted\n";
  for (const auto& [k, n] : dist.groups()) {
    out << k << ',' << n << ',';
    if (params) out << format_number(predicted_groups(*params, dist.group_count(), k));
    out << '\n';
  }
  return out.str();
}

inline nlohmann::json frequency_table_json(const FrequencyDistribution& dist, const RgfParams* params = nullptr) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& [k, n] : dist.groups()) {
    nlohmann::json row = {{"k", k}, {"count", n}};
    if (params) row["predicted"] = round_significant(predicted_groups(*params, dist.group_count(), k));
    rows.push_back(row);
  }
  return {{"M", dist.total_objects()}, {"N", dist.group_count()}, {"k_max", dist.k_max()}, {"rows", rows}};
}

/// A,b,gamma,residual_norm,residual_mean,residual_top,iterations
inline std::string fit_record_csv(const RgfFit& fit) {
  std::ostringstream out;
  out << "A,b,gamma,residual_norm,residual_mean,residual_top,iterations\n"
      << format_number(fit.params.A) << ',' << format_number(fit.params.b) << ','
      << format_number(fit.params.gamma) << ',' << format_number(fit.residuals[0]) << ','
      << format_number(fit.residuals[1]) << ',' << format_number(fit.residuals[2]) << ',' << fit.iterations
      << '\n';
  return out.str();
}

inline nlohmann::json fit_record_json(const RgfFit& fit) {
  return {{"A", round_significant(fit.params.A)},
          {"b", round_significant(fit.params.b)},
          {"gamma", round_significant(fit.params.gamma)},
          {"residual_norm", round_significant(fit.residuals[0])},
          {"residual_mean", round_significant(fit.residuals[1])},
          {"residual_top", round_significant(fit.residuals[2])},
          {"iterations", fit.iterations},
          {"top_group_mean", round_significant(fit.top_group_mean)},
          {"top_group_enforced", fit.top_group_enforced},
          {"support", fit.params.support}};
}

/// Plain key=value lines, one per field.
inline std::string fit_record_text(const RgfFit& fit) {
  std::ostringstream out;
  out << "A=" << format_number(fit.params.A) << '\n'
      << "b=" << format_number(fit.params.b) << '\n'
      << "gamma=" << format_number(fit.params.gamma) << '\n'
      << "residual_norm=" << format_number(fit.residuals[0]) << '\n'
      << "residual_mean=" << format_number(fit.residuals[1]) << '\n'
      << "residual_top=" << format_number(fit.residuals[2]) << '\n'
      << "iterations=" << fit.iterations << '\n'
      << "support=" << fit.params.support << '\n';
  return out.str();
}

inline std::map<std::string, std::string> parse_key_values(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    out[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return out;
}

/// draws,repeat,mse
inline std::string mse_experiment_csv(const std::vector<MseExperiment>& runs) {
  std::ostringstream out;
  out << "draws,repeat,mse\n";
  for (const auto& run : runs)
    for (const auto& row : run.rows) out << row.draws << ',' << row.repeat << ',' << format_number(row.mse) << '\n';
  return out.str();
}

inline nlohmann::json mse_experiment_json(const std::vector<MseExperiment>& runs) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& run : runs) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : run.rows) rows.push_back({{"repeat", row.repeat}, {"mse", round_significant(row.mse)}});
    out.push_back({{"draws", run.rows.empty() ? 0 : run.rows.front().draws},
                   {"mean_mse", round_significant(run.mean_mse)},
                   {"rows", rows}});
  }
  return out;
}

/// Writes `content` to `path` via a temporary file in the same directory.
inline void write_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw std::runtime_error("cannot move output into place at '" + path.string() + "'");
  }
}

/// Files produced by one run.  Unless committed, the destructor deletes
/// them, so a failing run leaves no partial outputs behind.
class OutputSet {
public:
  explicit OutputSet(std::filesystem::path dir) : dir_(std::move(dir)) {}
  OutputSet(const OutputSet&) = delete;
  OutputSet& operator=(const OutputSet&) = delete;
  ~OutputSet() {
    if (committed_) return;
    std::error_code ec;
    for (const auto& path : written_) std::filesystem::remove(path, ec);
  }

  std::filesystem::path write(const std::string& name, const std::string& content) {
    std::filesystem::create_directories(dir_);
    const auto path = dir_ / name;
    write_atomic(path, content);
    written_.push_back(path);
    return path;
  }

  void commit() noexcept { committed_ = true; }
  [[nodiscard]] const std::vector<std::filesystem::path>& files() const noexcept { return written_; }

private:
  std::filesystem::path dir_;
  std::vector<std::filesystem::path> written_;
  bool committed_ = false;
};

}  // namespace fll
