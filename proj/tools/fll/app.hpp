#pragma once

// Command-line front end.  Subcommands:
//
//   predict   FLL / Benford tables
//   analyze   corpus -> letter histograms and comparison with the FLL
//   digits    numeric file -> first-digit comparison with Benford
//   fit       corpus -> RGF parameters and predicted N(k)
//   truncate  corpus + L -> meanings profile and generalized fit
//   simulate  1/k sampling MSE experiment or rank-ladder oracle
//   average   several corpora -> M-weighted average against the FLL
//
// Exit codes: 0 success, 1 usage error, 2 ingestion error, 3 fit failure.

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fll/fll.hpp"

namespace fll::cli {

enum ExitCode : int { ok = 0, usage = 1, ingestion = 2, fit_failure = 3 };

struct CommonOptions {
  std::string alphabet = "english26";
  std::string out_dir = ".";
  std::string format = "both";
  bool plot = false;

  [[nodiscard]] bool csv() const { return format == "csv" || format == "both"; }
  [[nodiscard]] bool json() const { return format == "json" || format == "both"; }
};

struct CorpusOptions {
  std::vector<std::string> files;
  std::string manifest;
  bool ngram = false;
  std::size_t count_field = 3;
  std::string start_marker;
  std::string end_marker;
  std::string byte_range;  // "BEGIN:END"
};

namespace detail {

inline void add_common(CLI::App* sub, CommonOptions& common) {
  sub->add_option("--alphabet", common.alphabet, "english26, german30, or a file with one letter per line");
  sub->add_option("--out", common.out_dir, "output directory");
  sub->add_option("--format", common.format, "csv, json or both")->check(CLI::IsMember({"csv", "json", "both"}));
  sub->add_flag("--plot", common.plot, "also write SVG charts");
}

inline void add_corpus(CLI::App* sub, CorpusOptions& corpus) {
  sub->add_option("files", corpus.files, "corpus files (plain UTF-8 text, or n-gram tables with --ngram)");
  sub->add_option("--manifest", corpus.manifest, "JSON corpus registry");
  sub->add_flag("--ngram", corpus.ngram, "inputs are word/count tables");
  sub->add_option("--count-field", corpus.count_field, "1-based count column of n-gram tables");
  sub->add_option("--start-marker", corpus.start_marker, "text starts after the line containing this");
  sub->add_option("--end-marker", corpus.end_marker, "text ends before the line containing this");
  sub->add_option("--byte-range", corpus.byte_range, "BEGIN:END byte range applied before markers");
}

inline std::vector<CorpusEntry> corpus_entries(const CorpusOptions& corpus, const CommonOptions& common) {
  std::vector<CorpusEntry> entries;
  if (!corpus.manifest.empty()) entries = load_manifest(corpus.manifest);
  for (const auto& file : corpus.files) {
    CorpusEntry entry;
    entry.path = file;
    entry.name = entry.path.stem().string();
    entry.alphabet = common.alphabet;
    entry.format = corpus.ngram ? "ngram" : "text";
    entry.count_field = corpus.count_field;
    entry.trim.start_marker = corpus.start_marker;
    entry.trim.end_marker = corpus.end_marker;
    if (!corpus.byte_range.empty()) {
      const auto colon = corpus.byte_range.find(':');
      if (colon == std::string::npos) throw CLI::ValidationError("--byte-range", "expected BEGIN:END");
      try {
        entry.trim.begin_byte = std::stoull(corpus.byte_range.substr(0, colon));
        entry.trim.end_byte = std::stoull(corpus.byte_range.substr(colon + 1));
      } catch (const std::exception&) {
        throw CLI::ValidationError("--byte-range", "expected BEGIN:END");
      }
    }
    entries.push_back(std::move(entry));
  }
  if (entries.empty()) throw CLI::ValidationError("files", "no corpus given (pass files or --manifest)");
  return entries;
}

inline void emit(OutputSet& outputs, const CommonOptions& common, const std::string& stem, const std::string& csv,
                 const nlohmann::json& json) {
  if (common.csv()) outputs.write(stem + ".csv", csv);
  if (common.json()) outputs.write(stem + ".json", json.dump(2) + "\n");
}

inline std::string top_labels(const RankedDistribution& dist, std::size_t count) {
  std::string out;
  for (std::size_t i = 0; i < std::min(count, dist.labels.size()); ++i) out += (i ? "," : "") + dist.labels[i];
  return out;
}

inline void warn_rejects(std::ostream& err, const std::string& name, const LetterHistogram& hist) {
  if (hist.needs_warning())
    err << "warning: " << name << ": " << std::fixed << std::setprecision(2) << 100.0 * hist.rejected_fraction()
        << "% of " << to_string(hist.mode) << " entries fall outside the alphabet\n"
        << std::defaultfloat;
}

// ---------------------------------------------------------------- predict

struct PredictOptions {
  std::optional<int> fll;
  std::optional<int> base;
};

inline void run_predict(const PredictOptions& opt, const CommonOptions& common, std::ostream& out) {
  if (!opt.fll && !opt.base) throw CLI::ValidationError("predict", "give --fll X and/or --base B");
  OutputSet outputs(common.out_dir);
  const auto print = [&](const std::string& title, const RankedDistribution& dist) {
    out << title << "\nrank,label,predicted,percent\n";
    for (std::size_t i = 0; i < dist.rank_count(); ++i)
      out << i + 1 << ',' << (dist.has_labels() ? dist.labels[i] : "") << ',' << format_number(dist.ratios[i])
          << ',' << std::fixed << std::setprecision(1) << percent(dist.ratios[i]) << std::defaultfloat << '\n';
  };
  if (opt.fll) {
    const RankedDistribution dist = fll_prediction(*opt.fll);
    const std::string stem = "fll_" + std::to_string(*opt.fll);
    emit(outputs, common, stem, prediction_csv(dist), prediction_json(dist));
    print("First-Letter Law, X=" + std::to_string(*opt.fll), dist);
  }
  if (opt.base) {
    const RankedDistribution dist = benford_prediction(*opt.base);
    const std::string stem = "benford_" + std::to_string(*opt.base);
    emit(outputs, common, stem, prediction_csv(dist), prediction_json(dist));
    print("Benford, base " + std::to_string(*opt.base), dist);
  }
  outputs.commit();
}

// ---------------------------------------------------------------- analyze

inline void run_analyze(const CorpusOptions& corpus, const CommonOptions& common, std::ostream& out,
                        std::ostream& err) {
  const auto entries = corpus_entries(corpus, common);
  OutputSet outputs(common.out_dir);
  for (const auto& entry : entries) {
    const Alphabet alphabet = Alphabet::by_name(entry.alphabet);
    const LoadedCorpus loaded = load_corpus(entry, alphabet);
    const CorpusStats& stats = loaded.stats;

    const LetterHistogram m_first = letter_histogram(stats, alphabet, LetterMode::m_first_letter);
    const LetterHistogram n_first = letter_histogram(stats, alphabet, LetterMode::n_first_letter);
    const LetterHistogram all = letter_histogram(stats, alphabet, LetterMode::all_letters);
    warn_rejects(err, entry.name, m_first);

    const RankedDistribution observed = ranked(m_first);
    const RankedDistribution predicted = fll_prediction(static_cast<int>(alphabet.size()));
    const ComparisonReport report = compare(observed, predicted);
    const RankedDistribution n_ranked = ranked(n_first);
    const RankedDistribution all_ranked = ranked(all);

    if (common.csv()) {
      outputs.write(entry.name + ".m_first.csv", histogram_csv(m_first));
      outputs.write(entry.name + ".n_first.csv", histogram_csv(n_first));
      outputs.write(entry.name + ".all_letters.csv", histogram_csv(all));
      outputs.write(entry.name + ".fll.csv", rank_table_csv(report));
    }
    if (common.json()) {
      nlohmann::json doc = {
          {"name", entry.name},
          {"source", stats.source()},
          {"alphabet", alphabet.name()},
          {"X", alphabet.size()},
          {"M", stats.total_words()},
          {"N", stats.distinct_words()},
          {"rejected", loaded.rejected},
          {"histograms", {histogram_json(m_first), histogram_json(n_first), histogram_json(all)}},
          {"fll_comparison", rank_table_json(report)},
          {"n_first_vs_fll_mse", round_significant(compare(n_ranked, predicted).mse)},
          {"all_letters_vs_fll_mse", round_significant(compare(all_ranked, predicted).mse)},
      };
      outputs.write(entry.name + ".analysis.json", doc.dump(2) + "\n");
    }
    if (common.plot) {
      outputs.write(entry.name + ".fll.svg", rank_chart_svg(report, entry.name + ": first letters vs FLL"));
      outputs.write(entry.name + ".all_vs_first.svg",
                    rank_overlay_svg(observed, "first-letters", all_ranked, "all-letters",
                                     entry.name + ": first-letters vs all-letters"));
      outputs.write(entry.name + ".n_vs_m.svg", rank_overlay_svg(observed, "M first-letters", n_ranked,
                                                                 "N first-letters",
                                                                 entry.name + ": M vs N first-letters"));
    }
    out << entry.name << ": M=" << stats.total_words() << " N=" << stats.distinct_words() << " X=" << alphabet.size()
        << " mse=" << format_number(report.mse) << " top=" << top_labels(observed, 4) << '\n';
  }
  outputs.commit();
}

// ---------------------------------------------------------------- digits

struct DigitsOptions {
  std::string file;
  std::size_t column = 0;
  std::string delimiter = ",";
  int base = 10;
};

inline void run_digits(const DigitsOptions& opt, const CommonOptions& common, std::ostream& out) {
  std::ifstream in(opt.file);
  if (!in) throw ingest_error("cannot open '" + opt.file + "'");
  if (opt.delimiter.size() != 1) throw CLI::ValidationError("--delimiter", "must be a single character");
  const std::vector<double> values = read_numbers(in, opt.column, opt.delimiter.front());
  const DigitHistogram hist = first_digit_histogram(values, opt.base);
  if (hist.accepted == 0) throw ingest_error("'" + opt.file + "': no positive numeric values");

  const ComparisonReport report = compare(hist.distribution(), benford_prediction(opt.base));
  OutputSet outputs(common.out_dir);
  const std::string stem = std::filesystem::path(opt.file).stem().string() + ".benford";
  nlohmann::json doc = rank_table_json(report);
  doc["base"] = opt.base;
  doc["accepted"] = hist.accepted;
  doc["skipped"] = hist.skipped;
  emit(outputs, common, stem, rank_table_csv(report), doc);
  if (common.plot) outputs.write(stem + ".svg", rank_chart_svg(report, "first digits vs Benford"));
  outputs.commit();
  out << opt.file << ": values=" << hist.accepted << " skipped=" << hist.skipped
      << " mse=" << format_number(report.mse) << '\n';
}

// ---------------------------------------------------------------- fit

struct FitOptions {
  std::string level = "word";
};

struct FitInput {
  FrequencyDistribution dist;
  std::uint64_t total;
  std::uint64_t groups;
  std::uint64_t k_max;
};

inline FitInput fit_input(const CorpusStats& stats, const Alphabet& alphabet, const std::string& level,
                          std::ostream& err, const std::string& name) {
  if (level == "first-letter") {
    const LetterHistogram hist = letter_histogram(stats, alphabet, LetterMode::m_first_letter);
    warn_rejects(err, name, hist);
    std::vector<std::uint64_t> sizes;
    for (std::uint64_t c : hist.counts)
      if (c > 0) sizes.push_back(c);
    FrequencyDistribution dist = FrequencyDistribution::from_sizes(sizes);
    const std::uint64_t k_max = dist.k_max();
    return {std::move(dist), hist.total, alphabet.size(), k_max};
  }
  FrequencyDistribution dist = FrequencyDistribution::from_corpus(stats);
  return {dist, dist.total_objects(), dist.group_count(), dist.k_max()};
}

inline void emit_fit(OutputSet& outputs, const CommonOptions& common, const std::string& stem, const RgfFit& fit,
                     const FrequencyDistribution& dist, nlohmann::json extra = nlohmann::json::object()) {
  outputs.write(stem + ".fit.txt", fit_record_text(fit));
  if (common.csv()) {
    outputs.write(stem + ".fit.csv", fit_record_csv(fit));
    outputs.write(stem + ".freq.csv", frequency_table_csv(dist, &fit.params));
  }
  if (common.json()) {
    nlohmann::json doc = {{"fit", fit_record_json(fit)}, {"frequencies", frequency_table_json(dist, &fit.params)}};
    doc.update(extra);
    outputs.write(stem + ".fit.json", doc.dump(2) + "\n");
  }
  if (common.plot) outputs.write(stem + ".freq.svg", frequency_plot_svg(dist, &fit.params, stem));
}

inline void run_fit(const CorpusOptions& corpus, const FitOptions& opt, const CommonOptions& common,
                    std::ostream& out, std::ostream& err) {
  const auto entries = corpus_entries(corpus, common);
  OutputSet outputs(common.out_dir);
  for (const auto& entry : entries) {
    const Alphabet alphabet = Alphabet::by_name(entry.alphabet);
    const LoadedCorpus loaded = load_corpus(entry, alphabet);
    const FitInput input = fit_input(loaded.stats, alphabet, opt.level, err, entry.name);
    const RgfFit fit = rgf_fit(input.total, input.groups, input.k_max);
    emit_fit(outputs, common, entry.name + "." + opt.level, fit, input.dist,
             {{"M", input.total}, {"N", input.groups}, {"k_max", input.k_max}, {"level", opt.level}});
    out << entry.name << " (" << opt.level << "): M=" << input.total << " N=" << input.groups
        << " k_max=" << input.k_max << " gamma=" << format_number(fit.params.gamma)
        << " b=" << format_number(fit.params.b) << " A=" << format_number(fit.params.A) << '\n';
  }
  outputs.commit();
}

// ---------------------------------------------------------------- truncate

inline void run_truncate(const CorpusOptions& corpus, std::size_t length, const CommonOptions& common,
                         std::ostream& out) {
  if (length < 1) throw CLI::ValidationError("--truncate", "L must be >= 1");
  const auto entries = corpus_entries(corpus, common);
  OutputSet outputs(common.out_dir);
  for (const auto& entry : entries) {
    const Alphabet alphabet = Alphabet::by_name(entry.alphabet);
    const LoadedCorpus loaded = load_corpus(entry, alphabet);
    const CorpusStats truncated = truncate_words(loaded.stats, length);
    const MeaningsProfile profile = meanings_profile(loaded.stats, length);
    const FrequencyDistribution dist = FrequencyDistribution::from_corpus(truncated);
    const double bits_full = information(FrequencyDistribution::from_corpus(loaded.stats));
    const double bits_truncated = information(dist, profile);
    const std::string stem = entry.name + ".L" + std::to_string(length);

    std::ostringstream csv;
    csv << "k,f\n";
    for (const auto& [k, f] : profile.values) csv << k << ',' << format_number(f) << '\n';
    outputs.write(stem + ".meanings.csv", csv.str());

    const RgfFit fit =
        rgf_fit_generalized(dist.total_objects(), dist.group_count(), dist.k_max(), profile);
    emit_fit(outputs, common, stem, fit, dist,
             {{"truncation_length", length},
              {"information_bits_full", round_significant(bits_full)},
              {"information_bits_truncated", round_significant(bits_truncated)}});
    out << entry.name << " L=" << length << ": forms=" << dist.group_count() << " k_max=" << dist.k_max()
        << " info_full=" << format_number(bits_full) << " info_truncated=" << format_number(bits_truncated)
        << " gamma=" << format_number(fit.params.gamma) << " b=" << format_number(fit.params.b) << '\n';
  }
  outputs.commit();
}

// ---------------------------------------------------------------- simulate

struct SimulateOptions {
  std::string experiment = "benford";
  std::vector<std::uint64_t> draws{4000, 10000000};
  std::uint64_t repeats = 20;
  std::uint64_t seed = 1;
  int decades = 6;
  int base = 10;
  std::size_t groups = 26;
  double decay = 1e-3;
  std::uint64_t trials = 10000;
};

/// Least-squares slope of log10(mse) against log10(draws).
inline double loglog_slope(const std::vector<MseExperiment>& runs) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(runs.size());
  for (const auto& run : runs) {
    const double x = std::log10(static_cast<double>(run.rows.front().draws));
    const double y = std::log10(run.mean_mse);
    sx += x, sy += y, sxx += x * x, sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

inline void run_simulate(const SimulateOptions& opt, const CommonOptions& common, std::ostream& out) {
  OutputSet outputs(common.out_dir);
  if (opt.experiment == "benford") {
    std::vector<MseExperiment> runs;
    for (std::uint64_t draws : opt.draws) {
      runs.push_back(first_digit_mse_experiment(draws, opt.repeats, opt.seed, opt.base, opt.decades));
      out << "draws=" << draws << " repeats=" << opt.repeats << " mean_mse=" << format_number(runs.back().mean_mse)
          << '\n';
    }
    nlohmann::json doc = {{"base", opt.base}, {"decades", opt.decades}, {"seed", opt.seed},
                          {"runs", mse_experiment_json(runs)}};
    if (runs.size() >= 2) {
      doc["loglog_slope"] = round_significant(loglog_slope(runs));
      out << "log-log slope=" << format_number(loglog_slope(runs)) << '\n';
    }
    emit(outputs, common, "simulate_benford", mse_experiment_csv(runs), doc);
    if (common.plot) {
      PlotSeries series{"mean MSE", {}, Marker::filled_circle};
      for (const auto& run : runs) series.points.emplace_back(double(run.rows.front().draws), run.mean_mse);
      outputs.write("simulate_benford.svg", render_svg({"first-digit MSE vs draws", "draws", "MSE", true, true, {}},
                                                       {series}));
    }
  } else if (opt.experiment == "ladder") {
    const std::vector<double> means = ladder_oracle(opt.groups, opt.decay, opt.trials, opt.seed);
    const RankedDistribution law = fll_prediction(static_cast<int>(opt.groups));
    double total = 0.0;
    for (double m : means) total += m - means.back();
    std::ostringstream csv;
    csv << "rank,mean_size,normalized,fll,relative_error\n";
    nlohmann::json rows = nlohmann::json::array();
    RankedDistribution normalized;
    for (std::size_t i = 0; i < means.size(); ++i) {
      const double p = (means[i] - means.back()) / total;
      normalized.ratios.push_back(p);
      const double rel = law.ratios[i] > 0.0 ? p / law.ratios[i] - 1.0 : 0.0;
      csv << i + 1 << ',' << format_number(means[i]) << ',' << format_number(p) << ','
          << format_number(law.ratios[i]) << ',' << format_number(rel) << '\n';
      rows.push_back({{"rank", i + 1},
                      {"mean_size", round_significant(means[i])},
                      {"normalized", round_significant(p)},
                      {"fll", round_significant(law.ratios[i])},
                      {"relative_error", round_significant(rel)}});
    }
    nlohmann::json doc = {{"groups", opt.groups}, {"decay", opt.decay}, {"trials", opt.trials},
                          {"seed", opt.seed},     {"rows", rows}};
    emit(outputs, common, "simulate_ladder", csv.str(), doc);
    if (common.plot)
      outputs.write("simulate_ladder.svg",
                    rank_chart_svg(compare(normalized, law), "rank ladder oracle vs FLL"));
    out << "ladder N=" << opt.groups << " b=" << opt.decay << " trials=" << opt.trials
        << " mse_vs_fll=" << format_number(compare(normalized, law).mse) << '\n';
  } else {
    throw CLI::ValidationError("--experiment", "benford or ladder");
  }
  outputs.commit();
}

// ---------------------------------------------------------------- average

inline void run_average(const CorpusOptions& corpus, const CommonOptions& common, std::ostream& out,
                        std::ostream& err) {
  const auto entries = corpus_entries(corpus, common);
  std::vector<WeightedDistribution> inputs;
  nlohmann::json corpora = nlohmann::json::array();
  std::uint64_t total = 0;
  std::size_t letters = 0;
  for (const auto& entry : entries) {
    const Alphabet alphabet = Alphabet::by_name(entry.alphabet);
    if (letters != 0 && alphabet.size() != letters)
      throw domain_error("average: corpora use alphabets of different sizes");
    letters = alphabet.size();
    const LoadedCorpus loaded = load_corpus(entry, alphabet);
    const LetterHistogram hist = letter_histogram(loaded.stats, alphabet, LetterMode::m_first_letter);
    warn_rejects(err, entry.name, hist);
    const RankedDistribution dist = ranked(hist);
    const double mse = compare(dist, fll_prediction(static_cast<int>(letters))).mse;
    inputs.push_back({dist, static_cast<double>(hist.total)});
    total += hist.total;
    corpora.push_back({{"name", entry.name}, {"M", hist.total}, {"mse", round_significant(mse)}});
    out << entry.name << ": M=" << hist.total << " mse=" << format_number(mse) << '\n';
  }
  const RankedDistribution average = weighted_average(inputs);
  const ComparisonReport report = compare(average, fll_prediction(static_cast<int>(letters)));
  OutputSet outputs(common.out_dir);
  nlohmann::json doc = rank_table_json(report);
  doc["corpora"] = corpora;
  doc["total_M"] = total;
  emit(outputs, common, "average", rank_table_csv(report), doc);
  if (common.plot) outputs.write("average.svg", rank_chart_svg(report, "weighted average vs FLL"));
  outputs.commit();
  out << "average: corpora=" << entries.size() << " M=" << total << " mse=" << format_number(report.mse) << '\n';
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"First-letter and first-digit frequency laws: predictions, corpus analysis, RGF fits"};
  app.require_subcommand(1);

  CommonOptions common;
  CorpusOptions corpus;

  detail::PredictOptions predict_opt;
  auto* predict = app.add_subcommand("predict", "emit FLL and/or Benford tables");
  predict->add_option("--fll", predict_opt.fll, "alphabet size X");
  predict->add_option("--base,--benford", predict_opt.base, "number base B");
  detail::add_common(predict, common);

  auto* analyze = app.add_subcommand("analyze", "letter histograms of corpora compared with the FLL");
  detail::add_common(analyze, common);
  detail::add_corpus(analyze, corpus);

  detail::DigitsOptions digits_opt;
  auto* digits = app.add_subcommand("digits", "first-digit distribution of a numeric file vs Benford");
  digits->add_option("file", digits_opt.file, "one value per line, or a delimited file with --column")->required();
  digits->add_option("--column", digits_opt.column, "1-based column (0: whole line)");
  digits->add_option("--delimiter", digits_opt.delimiter, "column delimiter");
  digits->add_option("--base", digits_opt.base, "number base");
  detail::add_common(digits, common);

  detail::FitOptions fit_opt;
  auto* fit = app.add_subcommand("fit", "RGF fit of word (or first-letter) frequencies");
  fit->add_option("--level", fit_opt.level, "word or first-letter")
      ->check(CLI::IsMember({"word", "first-letter"}));
  detail::add_common(fit, common);
  detail::add_corpus(fit, corpus);

  std::size_t truncate_length = 0;
  auto* truncate = app.add_subcommand("truncate", "meanings profile and generalized RGF fit for first-L letters");
  truncate->add_option("--truncate,-L", truncate_length, "letters kept per word")->required();
  detail::add_common(truncate, common);
  detail::add_corpus(truncate, corpus);

  detail::SimulateOptions sim_opt;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo experiments");
  simulate->add_option("--experiment", sim_opt.experiment, "benford or ladder")
      ->check(CLI::IsMember({"benford", "ladder"}));
  simulate->add_option("--draws", sim_opt.draws, "draws per repeat (repeatable)");
  simulate->add_option("--repeats", sim_opt.repeats, "repeats per draw count");
  simulate->add_option("--seed", sim_opt.seed, "64-bit seed");
  simulate->add_option("--decades", sim_opt.decades, "support [1, base^decades)");
  simulate->add_option("--base", sim_opt.base, "number base");
  simulate->add_option("--groups", sim_opt.groups, "ladder: number of groups N");
  simulate->add_option("--decay", sim_opt.decay, "ladder: exponential decay b");
  simulate->add_option("--trials", sim_opt.trials, "ladder: trials");
  detail::add_common(simulate, common);

  auto* average = app.add_subcommand("average", "M-weighted average of several corpora vs the FLL");
  detail::add_common(average, common);
  detail::add_corpus(average, corpus);

  try {
    app.parse(argc, argv);
    if (*predict) detail::run_predict(predict_opt, common, out);
    if (*analyze) detail::run_analyze(corpus, common, out, err);
    if (*digits) detail::run_digits(digits_opt, common, out);
    if (*fit) detail::run_fit(corpus, fit_opt, common, out, err);
    if (*truncate) detail::run_truncate(corpus, truncate_length, common, out);
    if (*simulate) detail::run_simulate(sim_opt, common, out);
    if (*average) detail::run_average(corpus, common, out, err);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return ok;
  } catch (const CLI::Error& e) {
    app.exit(e, out, err);
    return usage;
  } catch (const ingest_error& e) {
    err << "error: " << e.what() << '\n';
    return ingestion;
  } catch (const fit_error& e) {
    err << "error: " << e.what() << " (residuals " << format_number(e.residuals()[0]) << ", "
        << format_number(e.residuals()[1]) << ", " << format_number(e.residuals()[2]) << ")\n";
    return fit_failure;
  } catch (const domain_error& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return ingestion;
  }
  return ok;
}

}  // namespace fll::cli
