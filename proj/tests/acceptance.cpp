// Acceptance checks, one line per criterion.
//
//   fll_acceptance                 run everything, exit 1 if anything failed
//   fll_acceptance --criterion N   run one criterion: exit 0 pass, 1 fail, 77 skipped
//
// Corpus-dependent checks read their inputs from the environment:
//   FLL_MOBY_DICK        plain-text Moby Dick (Gutenberg markers are honoured if present)
//   FLL_NOVELS_MANIFEST  manifest listing the nine novels of the average
//   FLL_NGRAM_SAMPLE     optional 1-gram table (plain or gzip), counts in field 3
//   FLL_NGRAM_ALPHABET   alphabet for the sample (default english26)
// A criterion whose inputs are missing is reported as SKIP.

#include <zlib.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fll/fll.hpp"
#include "oracles.hpp"

using namespace fll;

namespace {

enum class Outcome { pass, fail, skip };

struct Verdict {
  Outcome outcome;
  std::string detail;
};

class Checks {
public:
  void expect(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
    notes_.push_back(what);
  }
  [[nodiscard]] Verdict verdict(const std::string& summary) const {
    if (failures_.empty()) return {Outcome::pass, summary};
    std::string detail = summary + "; failed:";
    for (const auto& f : failures_) detail += " [" + f + "]";
    return {Outcome::fail, detail};
  }

private:
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

std::string fmt(const char* pattern, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, pattern, a);
  return buf;
}

std::string fmt(const char* pattern, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, pattern, a, b);
  return buf;
}

std::optional<std::string> env(const char* name) {
  const char* v = std::getenv(name);
  if (!v || !*v) return std::nullopt;
  return std::string(v);
}

/// Moby Dick corpus, trimmed at the usual Gutenberg markers when present.
std::optional<CorpusStats> moby_dick() {
  static std::optional<CorpusStats> cached;
  static bool loaded = false;
  if (loaded) return cached;
  loaded = true;
  const auto path = env("FLL_MOBY_DICK");
  if (!path) return std::nullopt;
  const std::string text = read_file(*path);
  TrimSpec trim;
  if (text.find("*** START OF") != std::string::npos) trim.start_marker = "*** START OF";
  if (text.find("*** END OF") != std::string::npos) trim.end_marker = "*** END OF";
  cached = corpus_from_text(text, Alphabet::english(), trim, *path).stats;
  return cached;
}

// ---------------------------------------------------------------- 1

Verdict closed_form() {
  Checks c;
  const auto law = fll_prediction(26);
  double worst = 0;
  for (std::size_t i = 0; i < 26; ++i) worst = std::max(worst, std::abs(100 * law.ratios[i] - oracle::table_fll[i]));
  c.expect(worst <= 0.05, fmt("max |FLL - table| = %.4f pp <= 0.05", worst));
  c.expect(std::abs(law.ratios[0] - 0.1663) <= 0.0005, fmt("p1(26) = %.5f", law.ratios[0]));
  const double p30 = fll_prediction(30).ratios[0];
  c.expect(std::abs(p30 - 0.1487) <= 0.0005, fmt("p1(30) = %.5f", p30));
  bool sums = true, tail = true;
  for (int x = 2; x <= 200; ++x) {
    const auto p = fll_prediction(x);
    sums = sums && std::abs(p.sum() - 1.0) <= 1e-12;
    tail = tail && p.ratios.back() == 0.0;
  }
  c.expect(sums, "sum p = 1 for X in 2..200");
  c.expect(tail, "p_X = 0 for X in 2..200");
  const double d1 = benford_prediction(10).ratios[0];
  c.expect(std::abs(d1 - 0.30103) <= 1e-5, fmt("Benford digit 1 = %.6f", d1));
  return c.verdict(fmt("max table deviation %.4f pp, p1(26)=%.5f", worst, law.ratios[0]) +
                   fmt(", p1(30)=%.5f, Benford p1=%.6f", p30, d1));
}

// ---------------------------------------------------------------- 2

Verdict ladder_equivalence() {
  const auto means = ladder_oracle(26, 1e-3, 10000, 2024);
  const auto law = fll_prediction(26);
  double total = 0;
  for (double m : means) total += m - means.back();
  Checks c;
  double worst = 0;
  std::size_t worst_rank = 0;
  for (std::size_t i = 0; i < 20; ++i) {
    const double p = (means[i] - means.back()) / total;
    const double rel = std::abs(p / law.ratios[i] - 1.0);
    if (rel > worst) worst = rel, worst_rank = i + 1;
    if (rel > 0.02) c.expect(false, "rank " + std::to_string(i + 1) + fmt(" off by %.2f%%", 100 * rel));
  }
  return c.verdict(fmt("max relative deviation %.2f%% at rank ", 100 * worst) + std::to_string(worst_rank) +
                   " (ranks 1-20, limit 2%)");
}

// ---------------------------------------------------------------- 3

Verdict benford_sampling() {
  const std::vector<std::uint64_t> draws{4000, 40000, 400000, 4000000, 10000000};
  std::vector<MseExperiment> runs;
  for (std::uint64_t n : draws) runs.push_back(first_digit_mse_experiment(n, 20, 1));
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& run : runs) {
    const double x = std::log10(double(run.rows.front().draws)), y = std::log10(run.mean_mse);
    sx += x, sy += y, sxx += x * x, sxy += x * y;
  }
  const double n = double(runs.size());
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double small = runs.front().mean_mse, large = runs.back().mean_mse;
  Checks c;
  c.expect(small >= 0.3e-5 && small <= 3e-5, fmt("MSE(4000) = %.3g in [3e-6, 3e-5]", small));
  c.expect(large >= 0.3e-9 && large <= 3e-9, fmt("MSE(1e7) = %.3g in [3e-10, 3e-9]", large));
  c.expect(std::abs(slope + 1.0) <= 0.2, fmt("slope = %.3f", slope));
  return c.verdict(fmt("MSE(4000)=%.3g, MSE(1e7)=%.3g", small, large) + fmt(", slope %.3f", slope));
}

// ---------------------------------------------------------------- 4

Verdict corpus_reproduction() {
  const auto stats = moby_dick();
  if (!stats) return {Outcome::skip, "FLL_MOBY_DICK not set"};
  const Alphabet en = Alphabet::english();
  const auto hist = letter_histogram(*stats, en, LetterMode::m_first_letter);
  const auto r = ranked(hist);
  const auto report = compare(r, fll_prediction(26));
  const double m = double(stats->total_words());
  Checks c;
  c.expect(std::abs(m / 214675.0 - 1.0) <= 0.02, fmt("M = %.0f", m));
  c.expect(r.labels[0] == "t" && std::abs(r.ratios[0] - 0.164) <= 0.005, "top letter " + r.labels[0] + fmt(" at %.4f", r.ratios[0]));
  c.expect(report.mse >= 0.8e-5 && report.mse <= 2.5e-5, fmt("MSE = %.3g", report.mse));
  c.expect(r.labels[0] == "t" && r.labels[1] == "a" && r.labels[2] == "s",
           "top three " + r.labels[0] + r.labels[1] + r.labels[2]);
  return c.verdict(fmt("M=%.0f, p1=%.4f", m, r.ratios[0]) + " (" + r.labels[0] + r.labels[1] + r.labels[2] +
                   ")" + fmt(", MSE=%.3g", report.mse));
}

// ---------------------------------------------------------------- 5

Verdict novel_average() {
  const auto path = env("FLL_NOVELS_MANIFEST");
  if (!path) return {Outcome::skip, "FLL_NOVELS_MANIFEST not set"};
  std::vector<WeightedDistribution> inputs;
  for (const auto& entry : load_manifest(*path)) {
    const Alphabet alphabet = Alphabet::by_name(entry.alphabet);
    const auto loaded = load_corpus(entry, alphabet);
    const auto hist = letter_histogram(loaded.stats, alphabet, LetterMode::m_first_letter);
    inputs.push_back({ranked(hist), double(hist.total)});
  }
  const auto avg = weighted_average(inputs);
  const auto report = compare(avg, fll_prediction(26));
  Checks c;
  double worst = 0;
  for (std::size_t i = 0; i < 26; ++i) worst = std::max(worst, std::abs(100 * avg.ratios[i] - oracle::table_an[i]));
  c.expect(worst <= 0.3, fmt("max |avg - AN| = %.3f pp", worst));
  c.expect(report.mse >= 0.5e-5 && report.mse <= 2e-5, fmt("MSE = %.3g", report.mse));
  return c.verdict(std::to_string(inputs.size()) + " corpora" + fmt(", max AN deviation %.3f pp, MSE=%.3g", worst, report.mse));
}

// ---------------------------------------------------------------- 6

Verdict rgf_fit_check() {
  Checks c;
  std::string summary = "synthetic:";
  for (double b : {0.005, 0.02}) {
    for (double gamma : {0.0, 1.0, 2.0}) {
      const RgfParams gen = rgf_params(b, gamma);
      double g_mean = 0, b_mean = 0;
      for (int s = 0; s < 20; ++s) {
        const auto d = sample_rgf_corpus(gen, 100000, derive_seed(6, std::uint64_t(s)));
        const RgfFit fit = rgf_fit(d);
        g_mean += fit.params.gamma / 20;
        b_mean += fit.params.b / 20;
      }
      const std::string tag = fmt("(b=%g,g=%g)", b, gamma);
      c.expect(std::abs(g_mean - gamma) <= 0.1, tag + fmt(" gamma %.3f", g_mean));
      c.expect(std::abs(b_mean / b - 1.0) <= 0.2, tag + fmt(" b off %.1f%%", 100 * (b_mean / b - 1.0)));
      summary += " " + tag + fmt("->g=%.3f,db=%+.1f%%", g_mean, 100 * (b_mean / b - 1.0));
    }
  }
  if (const auto stats = moby_dick()) {
    const auto words = FrequencyDistribution::from_corpus(*stats);
    const double g_word = rgf_fit(words).params.gamma;
    const auto hist = letter_histogram(*stats, Alphabet::english(), LetterMode::m_first_letter);
    const std::uint64_t top = *std::max_element(hist.counts.begin(), hist.counts.end());
    const double g_letter = rgf_fit(hist.total, 26, top).params.gamma;
    c.expect(g_word >= 1.6 && g_word <= 2.0, fmt("word gamma %.3f in [1.6, 2.0]", g_word));
    c.expect(std::abs(g_letter) <= 0.3, fmt("first-letter gamma %.3f", g_letter));
    summary += fmt("; corpus: word gamma=%.3f, first-letter gamma=%.3f", g_word, g_letter);
  } else {
    summary += "; corpus part skipped (FLL_MOBY_DICK not set)";
  }
  return c.verdict(summary);
}

// ---------------------------------------------------------------- 7

Verdict meanings_check() {
  const auto stats = moby_dick();
  if (!stats) return {Outcome::skip, "FLL_MOBY_DICK not set"};
  const auto profile = meanings_profile(*stats, 1);
  Checks c;
  bool bounded = true;
  for (const auto& [k, f] : profile.values) bounded = bounded && f >= 1.0 && f <= double(k);
  c.expect(bounded, "1 <= f(k) <= k");

  std::vector<std::uint64_t> ks;
  for (const auto& [k, f] : profile.values) ks.push_back(k);
  const std::size_t first_top = ks.size() - std::max<std::size_t>(1, ks.size() / 10);
  double worst_ratio = 1.0;
  for (std::size_t i = first_top; i < ks.size(); ++i) worst_ratio = std::min(worst_ratio, profile.values.at(ks[i]) / double(ks[i]));
  c.expect(worst_ratio > 0.5, fmt("min f(k)/k over top-decile k = %.4f > 0.5", worst_ratio));

  const auto dist = FrequencyDistribution::from_corpus(truncate_words(*stats, 1));
  const RgfFit fit = rgf_fit_generalized(dist.total_objects(), dist.group_count(), dist.k_max(), profile);
  const std::uint64_t upto = std::max<std::uint64_t>(2, dist.k_max() / 2);
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0, n = 0;
  for (std::uint64_t k = 1; k <= upto; ++k) {
    const double p = rgf_pmf(fit.params, k);
    if (!(p > 0)) continue;
    const double x = double(k), y = std::log(p);
    sx += x, sy += y, sxx += x * x, sxy += x * y, syy += y * y, n += 1;
  }
  const double cov = sxy - sx * sy / n, vx = sxx - sx * sx / n, vy = syy - sy * sy / n;
  const double r2 = vy > 0 ? cov * cov / (vx * vy) : 1.0;
  c.expect(r2 >= 0.98, fmt("R^2 of log P(k) vs k = %.4f >= 0.98", r2));
  return c.verdict(fmt("min top-decile f/k = %.4f, R^2 = %.4f", worst_ratio, r2) +
                   fmt(", gamma=%.3f, b=%.3g", fit.params.gamma, fit.params.b));
}

// ---------------------------------------------------------------- 8

Verdict ngram_property() {
  Checks c;
  // Synthetic tables: each word's count split over random "year" rows, a
  // few malformed rows, written plain and gzipped.
  Xoshiro256 rng(8);
  const auto dir = std::filesystem::temp_directory_path() / ("fll_accept_" + std::to_string(rng.next()));
  std::filesystem::create_directories(dir);
  bool all_ok = true;
  for (int table = 0; table < 5; ++table) {
    std::map<std::string, std::uint64_t> truth;
    std::ostringstream body;
    std::uint64_t rows = 0, bad = 0;
    for (int w = 0; w < 2000; ++w) {
      std::string word(1, char('a' + rng.next() % 26));
      for (int l = 0; l < 3; ++l) word += char('a' + rng.next() % 26);
      const int splits = 1 + int(rng.next() % 4);
      for (int s = 0; s < splits; ++s) {
        const std::uint64_t count = 1 + rng.next() % 1000;
        truth[word] += count;
        body << (rng.next() % 2 ? word : std::string(1, char(word[0] - 32)) + word.substr(1)) << '\t'
             << 1900 + s << '\t' << count << "\t1\n";
        ++rows;
        if (rng.next() % 250 == 0) body << word << "\tbroken\n", ++bad, ++rows;
      }
    }
    const auto plain = dir / ("t" + std::to_string(table) + ".tsv");
    std::ofstream(plain) << body.str();
    const auto gz = dir / ("t" + std::to_string(table) + ".tsv.gz");
    gzFile f = gzopen(gz.string().c_str(), "wb");
    gzwrite(f, body.str().data(), unsigned(body.str().size()));
    gzclose(f);
    for (const auto& path : {plain, gz}) {
      const auto t = ingest_ngram_table(path.string());
      bool same = t.malformed == bad && t.rows == rows && t.stats.word_counts().size() == truth.size();
      for (const auto& [w, n] : truth) same = same && t.stats.count(w) == n;
      const auto r = ranked(letter_histogram(t.stats, Alphabet::english(), LetterMode::m_first_letter));
      same = same && satisfies_invariants(r) && r.rank_count() == 26;
      all_ok = all_ok && same;
    }
  }
  std::filesystem::remove_all(dir);
  c.expect(all_ok, "synthetic tables aggregate exactly (plain and gzip)");
  std::string summary = "5 synthetic tables aggregated exactly";
  if (const auto sample = env("FLL_NGRAM_SAMPLE")) {
    const Alphabet alphabet = Alphabet::by_name(env("FLL_NGRAM_ALPHABET").value_or("english26"));
    const auto t = ingest_ngram_table(*sample);
    const auto r = ranked(letter_histogram(t.stats, alphabet, LetterMode::m_first_letter));
    const auto report = compare(r, fll_prediction(int(alphabet.size())));
    c.expect(satisfies_invariants(r), "sample ranking satisfies invariants");
    summary += "; sample M=" + std::to_string(t.stats.total_words()) + fmt(", MSE vs FLL %.3g", report.mse);
  } else {
    summary += "; full 1-gram reproduction not attempted (declared out of scope)";
  }
  return c.verdict(summary);
}

const std::vector<std::pair<std::string, std::function<Verdict()>>>& criteria() {
  static const std::vector<std::pair<std::string, std::function<Verdict()>>> list{
      {"closed-form predictions", closed_form},
      {"ladder oracle vs FLL", ladder_equivalence},
      {"Benford sampling MSE", benford_sampling},
      {"Moby Dick first letters", corpus_reproduction},
      {"nine-novel average", novel_average},
      {"RGF fits", rgf_fit_check},
      {"meanings and truncation", meanings_check},
      {"n-gram streaming ingestion", ngram_property},
  };
  return list;
}

int report(std::size_t index) {
  const auto& [name, run] = criteria()[index];
  const auto start = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = run();
  } catch (const std::exception& e) {
    v = {Outcome::fail, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const char* tag = v.outcome == Outcome::pass ? "PASS" : v.outcome == Outcome::fail ? "FAIL" : "SKIP";
  std::printf("criterion %zu %s: %s (%s) [%.1fs]\n", index + 1, tag, name.c_str(), v.detail.c_str(), secs);
  std::fflush(stdout);
  return v.outcome == Outcome::pass ? 0 : v.outcome == Outcome::fail ? 1 : 77;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc == 3 && std::string(argv[1]) == "--criterion") {
    const int n = std::atoi(argv[2]);
    if (n < 1 || n > int(criteria().size())) {
      std::fprintf(stderr, "criterion must be 1..%zu\n", criteria().size());
      return 2;
    }
    return report(std::size_t(n - 1));
  }
  if (argc != 1) {
    std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
    return 2;
  }
  int failed = 0;
  for (std::size_t i = 0; i < criteria().size(); ++i) failed += report(i) == 1;
  return failed ? 1 : 0;
}
