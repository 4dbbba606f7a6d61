#pragma once

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fll/distribution.hpp"
#include "fll/utf8.hpp"

namespace fll {

/// Ordered set of case-folded letters.  The order fixes tie-breaking when
/// ranking, and the size X parameterizes the First-Letter Law.
class Alphabet {
public:
  Alphabet(std::string name, std::vector<char32_t> letters) : name_(std::move(name)) {
    for (char32_t& c : letters) c = utf8::fold_case(c);
    if (letters.size() < 2) throw domain_error("alphabet '" + name_ + "' needs at least two letters");
    lookup_.reserve(letters.size());
    for (std::size_t i = 0; i < letters.size(); ++i) lookup_.emplace_back(letters[i], i);
    std::sort(lookup_.begin(), lookup_.end());
    const auto dup = std::adjacent_find(lookup_.begin(), lookup_.end(),
                                        [](const auto& a, const auto& b) { return a.first == b.first; });
    if (dup != lookup_.end())
      throw domain_error("alphabet '" + name_ + "' lists letter '" + utf8::encode(dup->first) + "' twice");
    letters_ = std::move(letters);
  }

  static Alphabet english() {
    std::vector<char32_t> letters;
    for (char32_t c = U'a'; c <= U'z'; ++c) letters.push_back(c);
    return Alphabet("english26", std::move(letters));
  }

  // a-z plus the umlauts and sharp s, each counted as its own letter.
  static Alphabet german() {
    std::vector<char32_t> letters;
    for (char32_t c = U'a'; c <= U'z'; ++c) letters.push_back(c);
    letters.insert(letters.end(), {U'ä', U'ö', U'ü', U'ß'});
    return Alphabet("german30", std::move(letters));
  }

  /// One letter per line, in alphabet order.  Blank lines are ignored.
  static Alphabet from_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ingest_error("cannot open alphabet file '" + path + "'");
    std::vector<char32_t> letters;
    std::string line;
    std::size_t offset = 0;
    while (std::getline(in, line)) {
      const std::size_t line_offset = offset;
      offset += line.size() + 1;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      const auto first = line.find_first_not_of(" \t");
      if (first == std::string::npos) continue;
      const auto last = line.find_last_not_of(" \t");
      const std::string_view letter = std::string_view(line).substr(first, last - first + 1);
      const utf8::Decoded d = utf8::decode(letter, 0);
      if (d.length == 0) throw ingest_error("invalid UTF-8 in alphabet file '" + path + "'", line_offset + first);
      if (d.length != letter.size())
        throw ingest_error("alphabet file '" + path + "': expected one letter per line", line_offset + first);
      letters.push_back(d.code_point);
    }
    return Alphabet(path, std::move(letters));
  }

  /// "english26", "german30", or a path to a custom alphabet file.
  static Alphabet by_name(const std::string& spec) {
    if (spec == "english26" || spec == "english") return english();
    if (spec == "german30" || spec == "german") return german();
    return from_file(spec);
  }

  [[nodiscard]] const std::string& name() const noexcept { return name_; }
  [[nodiscard]] std::size_t size() const noexcept { return letters_.size(); }
  [[nodiscard]] const std::vector<char32_t>& letters() const noexcept { return letters_; }

  /// Position of an already case-folded code point.
  [[nodiscard]] std::optional<std::size_t> index_of(char32_t cp) const noexcept {
    const auto it = std::lower_bound(lookup_.begin(), lookup_.end(), std::pair{cp, std::size_t{0}});
    if (it == lookup_.end() || it->first != cp) return std::nullopt;
    return it->second;
  }

  [[nodiscard]] bool contains(char32_t cp) const noexcept { return index_of(cp).has_value(); }

  [[nodiscard]] std::string label(std::size_t index) const { return utf8::encode(letters_.at(index)); }

  [[nodiscard]] std::vector<std::string> labels() const {
    std::vector<std::string> out;
    out.reserve(letters_.size());
    for (char32_t c : letters_) out.push_back(utf8::encode(c));
    return out;
  }

private:
  std::string name_;
  std::vector<char32_t> letters_;
  std::vector<std::pair<char32_t, std::size_t>> lookup_;
};

}  // namespace fll
