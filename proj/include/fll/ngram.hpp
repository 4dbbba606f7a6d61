#pragma once

// Word/count tables such as the public 1-gram releases: one record per line,
// tab- or comma-separated (decided from the first line), word in the first
// field and the count in a configurable field.  Extra columns (year, volume
// count) are ignored and duplicate words are summed.  Plain and gzip input
// are both read through zlib.

#include <zlib.h>

#include <charconv>
#include <cstdint>
#include <istream>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "fll/corpus.hpp"
#include "fll/utf8.hpp"

namespace fll {

struct NgramOptions {
  std::size_t count_field = 3;  // 1-based
  char delimiter = 0;           // 0: auto-detect
  double max_malformed_fraction = 0.01;
};

struct NgramTable {
  CorpusStats stats;
  std::uint64_t rows = 0;
  std::uint64_t malformed = 0;
};

namespace detail {

class NgramAccumulator {
public:
  explicit NgramAccumulator(const NgramOptions& options) : options_(options) {
    if (options_.count_field < 2) throw domain_error("n-gram count field must be 2 or later");
  }

  void add_line(std::string_view line, std::size_t offset) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) return;
    if (delimiter_ == 0) delimiter_ = options_.delimiter != 0 ? options_.delimiter
                                      : line.find('\t') != std::string_view::npos ? '\t' : ',';
    ++rows_;

    std::string_view word;
    std::string_view count_text;
    std::size_t field = 1;
    std::size_t start = 0;
    while (true) {
      const std::size_t stop = line.find(delimiter_, start);
      const std::string_view value = line.substr(start, stop == std::string_view::npos ? stop : stop - start);
      if (field == 1) word = value;
      if (field == options_.count_field) count_text = value;
      if (stop == std::string_view::npos || field >= options_.count_field) break;
      start = stop + 1;
      ++field;
    }

    std::uint64_t count = 0;
    const auto parsed = std::from_chars(count_text.data(), count_text.data() + count_text.size(), count);
    const bool count_ok = field >= options_.count_field && !count_text.empty() && parsed.ec == std::errc() &&
                          parsed.ptr == count_text.data() + count_text.size() && count >= 1;
    bool word_ok = !word.empty();
    if (word_ok) {
      try {
        utf8::validate(word, offset);
      } catch (const ingest_error&) {
        word_ok = false;
      }
    }
    if (!count_ok || !word_ok) {
      ++malformed_;
      return;
    }
    counts_[utf8::fold(word)] += count;
  }

  NgramTable finish(std::string source) {
    if (rows_ > 0 && static_cast<double>(malformed_) > options_.max_malformed_fraction * static_cast<double>(rows_))
      throw ingest_error("'" + source + "': " + std::to_string(malformed_) + " of " + std::to_string(rows_) +
                         " rows malformed");
    if (counts_.empty()) throw ingest_error("'" + source + "': no valid rows");
    return {CorpusStats(std::move(counts_), std::move(source)), rows_, malformed_};
  }

private:
  NgramOptions options_;
  char delimiter_ = 0;
  CorpusStats::WordCounts counts_;
  std::uint64_t rows_ = 0;
  std::uint64_t malformed_ = 0;
};

}  // namespace detail

inline NgramTable ingest_ngram_stream(std::istream& in, const NgramOptions& options = {},
                                      std::string source = "stream") {
  detail::NgramAccumulator acc(options);
  std::string line;
  std::size_t offset = 0;
  while (std::getline(in, line)) {
    acc.add_line(line, offset);
    offset += line.size() + 1;
  }
  return acc.finish(std::move(source));
}

inline NgramTable ingest_ngram_table(const std::string& path, const NgramOptions& options = {}) {
  const std::unique_ptr<gzFile_s, decltype(&gzclose)> file(gzopen(path.c_str(), "rb"), &gzclose);
  if (!file) throw ingest_error("cannot open '" + path + "'");

  detail::NgramAccumulator acc(options);
  std::vector<char> buffer(1 << 16);
  std::string pending;
  std::size_t offset = 0;
  while (true) {
    const int n = gzread(file.get(), buffer.data(), static_cast<unsigned>(buffer.size()));
    if (n < 0) {
      int code = 0;
      throw ingest_error("'" + path + "': " + gzerror(file.get(), &code));
    }
    if (n == 0) break;
    pending.append(buffer.data(), static_cast<std::size_t>(n));
    std::size_t start = 0;
    for (std::size_t eol; (eol = pending.find('\n', start)) != std::string::npos; start = eol + 1) {
      acc.add_line(std::string_view(pending).substr(start, eol - start), offset + start);
    }
    offset += start;
    pending.erase(0, start);
  }
  if (!pending.empty()) acc.add_line(pending, offset);
  return acc.finish(path);
}

}  // namespace fll
