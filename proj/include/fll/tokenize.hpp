#pragma once

// Plain-text tokenization.
//
// The text is cut into segments at whitespace and punctuation (ASCII
// punctuation, Latin-1 and general punctuation, dashes, quotes, apostrophes).
// A segment whose first letter is not in the alphabet (a number, a word in a
// foreign script) is rejected as a whole and counted.  Any other segment is
// case-folded and split at every non-alphabet character, so "d'Urbervilles"
// gives "d" and "urbervilles" and "naïve" over a-z gives "na" and "ve".

#include <cstdint>
#include <fstream>
#include <iterator>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fll/alphabet.hpp"
#include "fll/utf8.hpp"

namespace fll {

inline bool is_separator(char32_t cp) noexcept {
  if (cp < 0x80) {
    const bool alnum = (cp >= U'0' && cp <= U'9') || (cp >= U'a' && cp <= U'z') || (cp >= U'A' && cp <= U'Z');
    return !alnum;
  }
  if (cp >= 0x80 && cp <= 0xBF) return true;    // C1 controls, NBSP, Latin-1 punctuation
  if (cp == 0xD7 || cp == 0xF7) return true;    // × ÷
  if (cp >= 0x2000 && cp <= 0x206F) return true;  // general punctuation, spaces, dashes
  if (cp >= 0x2E00 && cp <= 0x2E7F) return true;  // supplemental punctuation
  if (cp >= 0x3000 && cp <= 0x303F) return true;  // CJK punctuation
  if (cp == 0xFEFF || cp == 0x1680 || cp == 0x85) return true;
  if (cp >= 0xFE30 && cp <= 0xFE4F) return true;
  if (cp >= 0xFF01 && cp <= 0xFF0F) return true;  // fullwidth punctuation
  return false;
}

struct TokenizeSummary {
  std::uint64_t tokens = 0;
  std::uint64_t rejected_segments = 0;
};

/// Streams the tokens of `text` into `sink(std::string&&)`.  Throws
/// ingest_error on undecodable input, with the offset (plus `base_offset`)
/// of the offending byte.
template <class Sink>
TokenizeSummary for_each_token(std::string_view text, const Alphabet& alphabet, Sink&& sink,
                               std::size_t base_offset = 0) {
  TokenizeSummary summary;
  std::string current;
  bool in_segment = false;
  bool rejecting = false;

  const auto flush = [&] {
    if (!current.empty()) {
      ++summary.tokens;
      sink(std::move(current));
      current.clear();
    }
  };

  for (std::size_t pos = 0; pos < text.size();) {
    const utf8::Decoded d = utf8::decode(text, pos);
    if (d.length == 0) throw ingest_error("invalid UTF-8", base_offset + pos);
    pos += d.length;

    if (is_separator(d.code_point)) {
      flush();
      in_segment = false;
      rejecting = false;
      continue;
    }
    const char32_t folded = utf8::fold_case(d.code_point);
    const bool letter = alphabet.contains(folded);
    if (!in_segment) {
      in_segment = true;
      rejecting = !letter;
      if (rejecting) ++summary.rejected_segments;
    }
    if (rejecting) continue;
    if (letter) {
      utf8::append(current, folded);
    } else {
      flush();
    }
  }
  flush();
  return summary;
}

struct TokenStream {
  std::vector<std::string> tokens;
  std::uint64_t rejected_segments = 0;
};

inline TokenStream tokenize(std::string_view text, const Alphabet& alphabet) {
  TokenStream out;
  const TokenizeSummary summary =
      for_each_token(text, alphabet, [&](std::string&& token) { out.tokens.push_back(std::move(token)); });
  out.rejected_segments = summary.rejected_segments;
  return out;
}

/// Explicit boilerplate removal.  The byte range is applied first; then the
/// text starts after the line containing `start_marker` and ends before the
/// line containing `end_marker`.  A configured marker that is not found is an
/// error.
struct TrimSpec {
  std::optional<std::size_t> begin_byte;
  std::optional<std::size_t> end_byte;
  std::string start_marker;
  std::string end_marker;

  [[nodiscard]] bool empty() const noexcept {
    return !begin_byte && !end_byte && start_marker.empty() && end_marker.empty();
  }
};

struct TrimmedText {
  std::string_view text;
  std::size_t offset = 0;  // of text.front() within the original buffer
};

inline TrimmedText apply_trim(std::string_view text, const TrimSpec& spec) {
  std::size_t begin = spec.begin_byte.value_or(0);
  std::size_t end = spec.end_byte.value_or(text.size());
  if (begin > end || end > text.size())
    throw ingest_error("trim byte range [" + std::to_string(begin) + ", " + std::to_string(end) +
                       ") outside input of " + std::to_string(text.size()) + " bytes");

  if (!spec.start_marker.empty()) {
    const auto hit = text.substr(0, end).find(spec.start_marker, begin);
    if (hit == std::string_view::npos) throw ingest_error("start marker '" + spec.start_marker + "' not found");
    const auto eol = text.find('\n', hit);
    begin = eol == std::string_view::npos ? end : std::min(end, eol + 1);
  }
  if (!spec.end_marker.empty()) {
    const auto hit = text.substr(0, end).find(spec.end_marker, begin);
    if (hit == std::string_view::npos) throw ingest_error("end marker '" + spec.end_marker + "' not found");
    const auto bol = text.substr(0, hit).rfind('\n');
    end = bol == std::string_view::npos ? begin : std::max(begin, bol + 1);
  }
  return {text.substr(begin, end - begin), begin};
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ingest_error("cannot open '" + path + "'");
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw ingest_error("read failure on '" + path + "'");
  return data;
}

}  // namespace fll
