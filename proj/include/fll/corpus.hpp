#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fll/alphabet.hpp"
#include "fll/distribution.hpp"
#include "fll/tokenize.hpp"
#include "fll/utf8.hpp"

namespace fll {

/// Word counts of one corpus.  M is the number of word tokens, N the number
/// of distinct words.  Immutable once built.
class CorpusStats {
public:
  using WordCounts = std::map<std::string, std::uint64_t, std::less<>>;

  CorpusStats(WordCounts counts, std::string source) : counts_(std::move(counts)), source_(std::move(source)) {
    if (counts_.empty()) throw domain_error("corpus '" + source_ + "' has no words");
    for (const auto& [word, count] : counts_) {
      if (count == 0) throw domain_error("corpus '" + source_ + "': word '" + word + "' has zero count");
      total_ += count;
    }
  }

  [[nodiscard]] std::uint64_t total_words() const noexcept { return total_; }          // M
  [[nodiscard]] std::uint64_t distinct_words() const noexcept { return counts_.size(); }  // N
  [[nodiscard]] const WordCounts& word_counts() const noexcept { return counts_; }
  [[nodiscard]] const std::string& source() const noexcept { return source_; }

  [[nodiscard]] std::uint64_t count(std::string_view word) const {
    const auto it = counts_.find(word);
    return it == counts_.end() ? 0 : it->second;
  }

  /// The most frequent word; ties go to the lexicographically first.
  [[nodiscard]] std::pair<std::string, std::uint64_t> most_frequent() const {
    const auto it = std::max_element(counts_.begin(), counts_.end(),
                                     [](const auto& a, const auto& b) { return a.second < b.second; });
    return *it;
  }

  friend bool operator==(const CorpusStats&, const CorpusStats&) = default;

private:
  WordCounts counts_;
  std::string source_;
  std::uint64_t total_ = 0;
};

template <class Tokens>
CorpusStats corpus_stats(const Tokens& tokens, std::string source = "tokens") {
  CorpusStats::WordCounts counts;
  for (const auto& token : tokens) ++counts[std::string(token)];
  if (counts.empty()) throw domain_error("corpus_stats: empty token stream");
  return CorpusStats(std::move(counts), std::move(source));
}

struct TextCorpus {
  CorpusStats stats;
  std::uint64_t rejected_segments = 0;
};

/// Tokenizes a UTF-8 text buffer after trimming.
inline TextCorpus corpus_from_text(std::string_view text, const Alphabet& alphabet, const TrimSpec& trim = {},
                                   std::string source = "text") {
  const TrimmedText body = apply_trim(text, trim);
  CorpusStats::WordCounts counts;
  const TokenizeSummary summary = for_each_token(
      body.text, alphabet, [&](std::string&& token) { ++counts[std::move(token)]; }, body.offset);
  if (counts.empty()) throw ingest_error("no words found in '" + source + "'");
  return {CorpusStats(std::move(counts), std::move(source)), summary.rejected_segments};
}

inline TextCorpus corpus_from_file(const std::string& path, const Alphabet& alphabet, const TrimSpec& trim = {}) {
  const std::string data = read_file(path);
  return corpus_from_text(data, alphabet, trim, path);
}

/// Words cut to their first `length` letters; words that are already short
/// enough are kept as they are.
inline CorpusStats truncate_words(const CorpusStats& stats, std::size_t length) {
  if (length < 1) throw domain_error("truncate_words: length must be >= 1");
  CorpusStats::WordCounts counts;
  for (const auto& [word, count] : stats.word_counts()) counts[std::string(utf8::prefix(word, length))] += count;
  return CorpusStats(std::move(counts), stats.source() + "@L" + std::to_string(length));
}

/// N(k): how many distinct groups hold exactly k objects.
class FrequencyDistribution {
public:
  using Groups = std::map<std::uint64_t, std::uint64_t>;

  explicit FrequencyDistribution(Groups groups) : groups_(std::move(groups)) {
    if (groups_.empty()) throw domain_error("FrequencyDistribution: no groups");
    for (const auto& [k, n] : groups_) {
      if (k < 1 || n < 1) throw domain_error("FrequencyDistribution: k and N(k) must be >= 1");
      total_ += k * n;
      groups_count_ += n;
    }
  }

  static FrequencyDistribution from_corpus(const CorpusStats& stats) {
    Groups groups;
    for (const auto& entry : stats.word_counts()) ++groups[entry.second];
    return FrequencyDistribution(std::move(groups));
  }

  static FrequencyDistribution from_sizes(std::span<const std::uint64_t> sizes) {
    Groups groups;
    for (std::uint64_t k : sizes) ++groups[k];
    return FrequencyDistribution(std::move(groups));
  }

  [[nodiscard]] const Groups& groups() const noexcept { return groups_; }
  [[nodiscard]] std::uint64_t total_objects() const noexcept { return total_; }  // M
  [[nodiscard]] std::uint64_t group_count() const noexcept { return groups_count_; }  // N
  [[nodiscard]] std::uint64_t k_max() const noexcept { return groups_.rbegin()->first; }
  [[nodiscard]] double mean() const noexcept {
    return static_cast<double>(total_) / static_cast<double>(groups_count_);
  }
  [[nodiscard]] std::uint64_t groups_of_size(std::uint64_t k) const {
    const auto it = groups_.find(k);
    return it == groups_.end() ? 0 : it->second;
  }

private:
  Groups groups_;
  std::uint64_t total_ = 0;
  std::uint64_t groups_count_ = 0;
};

enum class LetterMode { m_first_letter, n_first_letter, all_letters };

inline const char* to_string(LetterMode mode) noexcept {
  switch (mode) {
    case LetterMode::m_first_letter: return "M-first-letter";
    case LetterMode::n_first_letter: return "N-first-letter";
    case LetterMode::all_letters: return "all-letters";
  }
  return "?";
}

/// Letter counts aligned with the alphabet order.  Letters outside the
/// alphabet land in `rejected` and are not part of `total`.
struct LetterHistogram {
  std::vector<std::string> letters;
  std::vector<std::uint64_t> counts;
  std::uint64_t total = 0;
  std::uint64_t rejected = 0;
  LetterMode mode = LetterMode::m_first_letter;

  [[nodiscard]] double rejected_fraction() const noexcept {
    const std::uint64_t seen = total + rejected;
    return seen == 0 ? 0.0 : static_cast<double>(rejected) / static_cast<double>(seen);
  }
  // More than 1% of the input fell outside the alphabet.
  [[nodiscard]] bool needs_warning() const noexcept { return rejected_fraction() > 0.01; }

  [[nodiscard]] std::uint64_t count(std::string_view letter) const {
    for (std::size_t i = 0; i < letters.size(); ++i)
      if (letters[i] == letter) return counts[i];
    return 0;
  }
};

inline LetterHistogram letter_histogram(const CorpusStats& stats, const Alphabet& alphabet, LetterMode mode) {
  LetterHistogram hist;
  hist.letters = alphabet.labels();
  hist.counts.assign(alphabet.size(), 0);
  hist.mode = mode;

  for (const auto& [word, occurrences] : stats.word_counts()) {
    const std::uint64_t weight = mode == LetterMode::n_first_letter ? 1 : occurrences;
    for (std::size_t pos = 0; pos < word.size();) {
      const utf8::Decoded d = utf8::decode(word, pos);
      if (d.length == 0) throw ingest_error("invalid UTF-8 in word from '" + stats.source() + "'", pos);
      pos += d.length;
      if (const auto index = alphabet.index_of(utf8::fold_case(d.code_point))) {
        hist.counts[*index] += weight;
        hist.total += weight;
      } else {
        hist.rejected += weight;
      }
      if (mode != LetterMode::all_letters) break;
    }
  }
  return hist;
}

/// Letter ratios sorted largest first; equal counts keep alphabet order.
inline RankedDistribution ranked(const LetterHistogram& hist) {
  if (hist.total == 0) throw domain_error("ranked: histogram is empty");
  std::vector<std::size_t> order(hist.counts.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return hist.counts[a] > hist.counts[b]; });
  RankedDistribution out;
  out.ratios.reserve(order.size());
  out.labels.reserve(order.size());
  const double total = static_cast<double>(hist.total);
  for (std::size_t index : order) {
    out.ratios.push_back(static_cast<double>(hist.counts[index]) / total);
    out.labels.push_back(hist.letters[index]);
  }
  return out;
}

struct WeightedDistribution {
  RankedDistribution distribution;
  double weight = 1.0;
};

/// Rank-wise weighted mean, renormalized to sum to one.  Labels survive only
/// when every input carries the same labels.
inline RankedDistribution weighted_average(std::span<const WeightedDistribution> inputs) {
  if (inputs.empty()) throw domain_error("weighted_average: no inputs");
  const std::size_t ranks = inputs.front().distribution.rank_count();
  double weight_sum = 0.0;
  for (const auto& input : inputs) {
    if (input.distribution.rank_count() != ranks)
      throw domain_error("weighted_average: rank counts differ (" + std::to_string(ranks) + " vs " +
                         std::to_string(input.distribution.rank_count()) + ")");
    if (!(input.weight >= 0.0)) throw domain_error("weighted_average: weights must be non-negative");
    weight_sum += input.weight;
  }
  if (!(weight_sum > 0.0)) throw domain_error("weighted_average: weights sum to zero");

  RankedDistribution out;
  out.ordering = inputs.front().distribution.ordering;
  out.ratios.assign(ranks, 0.0);
  for (const auto& input : inputs)
    for (std::size_t i = 0; i < ranks; ++i) out.ratios[i] += input.weight * input.distribution.ratios[i];
  const double total = std::accumulate(out.ratios.begin(), out.ratios.end(), 0.0);
  for (double& p : out.ratios) p /= total;

  const auto& labels = inputs.front().distribution.labels;
  const bool shared = std::all_of(inputs.begin(), inputs.end(),
                                  [&](const auto& input) { return input.distribution.labels == labels; });
  if (shared) out.labels = labels;
  return out;
}

}  // namespace fll
