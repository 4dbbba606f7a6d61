#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fll {

// Raised for unreadable or malformed input.  `offset` is the byte offset of
// the first offending byte when known.
class ingest_error : public std::runtime_error {
public:
  explicit ingest_error(const std::string& what, std::size_t offset = npos)
      : std::runtime_error(offset == npos ? what : what + " at byte offset " + std::to_string(offset)),
        offset_(offset) {}

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  [[nodiscard]] std::size_t offset() const noexcept { return offset_; }

private:
  std::size_t offset_;
};

namespace utf8 {

struct Decoded {
  char32_t code_point;
  std::size_t length;  // bytes consumed; 0 on error
};

/// Decodes one scalar value at `pos`.  Rejects overlong forms, surrogates and
/// values above U+10FFFF by returning length 0.
inline Decoded decode(std::string_view text, std::size_t pos) noexcept {
  const auto byte = [&](std::size_t i) { return static_cast<unsigned char>(text[i]); };
  const unsigned char lead = byte(pos);
  if (lead < 0x80) return {lead, 1};

  std::size_t length;
  char32_t cp;
  char32_t min;
  if ((lead & 0xE0) == 0xC0) {
    length = 2, cp = lead & 0x1F, min = 0x80;
  } else if ((lead & 0xF0) == 0xE0) {
    length = 3, cp = lead & 0x0F, min = 0x800;
  } else if ((lead & 0xF8) == 0xF0) {
    length = 4, cp = lead & 0x07, min = 0x10000;
  } else {
    return {0, 0};
  }
  if (pos + length > text.size()) return {0, 0};
  for (std::size_t i = 1; i < length; ++i) {
    const unsigned char c = byte(pos + i);
    if ((c & 0xC0) != 0x80) return {0, 0};
    cp = (cp << 6) | (c & 0x3F);
  }
  if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return {0, 0};
  return {cp, length};
}

inline void append(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

inline std::string encode(char32_t cp) {
  std::string out;
  append(out, cp);
  return out;
}

/// Simple one-to-one lower-case mapping for Latin, Greek and Cyrillic.
/// Anything else is returned unchanged.
inline char32_t fold_case(char32_t cp) noexcept {
  if (cp >= U'A' && cp <= U'Z') return cp + 0x20;
  if (cp < 0x80) return cp;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;  // Latin-1
  if (cp == 0x1E9E) return 0xDF;                                   // capital sharp s
  if (cp == 0x130) return U'i';
  if (cp >= 0x100 && cp <= 0x137 && cp != 0x131) return cp | 1;  // Latin Extended-A
  if (cp >= 0x139 && cp <= 0x148) return (cp & 1) ? cp + 1 : cp;
  if (cp >= 0x14A && cp <= 0x177) return cp | 1;
  if (cp == 0x178) return 0xFF;
  if (cp >= 0x179 && cp <= 0x17E) return (cp & 1) ? cp + 1 : cp;
  if (cp >= 0x391 && cp <= 0x3AB && cp != 0x3A2) return cp + 0x20;  // Greek
  if (cp >= 0x410 && cp <= 0x42F) return cp + 0x20;                 // Cyrillic
  if (cp >= 0x400 && cp <= 0x40F) return cp + 0x50;
  return cp;
}

/// Throws ingest_error with the offset of the first invalid sequence.
inline void validate(std::string_view text, std::size_t base_offset = 0) {
  for (std::size_t pos = 0; pos < text.size();) {
    const Decoded d = decode(text, pos);
    if (d.length == 0) throw ingest_error("invalid UTF-8", base_offset + pos);
    pos += d.length;
  }
}

/// Case-folds a UTF-8 string.  Input must be valid.
inline std::string fold(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t pos = 0; pos < text.size();) {
    const Decoded d = decode(text, pos);
    if (d.length == 0) throw ingest_error("invalid UTF-8", pos);
    append(out, fold_case(d.code_point));
    pos += d.length;
  }
  return out;
}

/// Leading `count` code points of a valid UTF-8 string (the whole string when
/// it is shorter).
inline std::string_view prefix(std::string_view text, std::size_t count) noexcept {
  std::size_t pos = 0;
  for (std::size_t n = 0; n < count && pos < text.size(); ++n) {
    const Decoded d = decode(text, pos);
    pos += d.length == 0 ? 1 : d.length;
  }
  return text.substr(0, pos);
}

}  // namespace utf8
}  // namespace fll
