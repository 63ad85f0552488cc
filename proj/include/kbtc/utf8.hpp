#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace kbtc {

inline constexpr std::string_view kReplacementCharacter = "\xEF\xBF\xBD";

struct DecodedText {
  std::string text;
  std::size_t replacements = 0;
};

// Validates UTF-8 and replaces every maximal ill-formed subsequence with
// U+FFFD, the same substitution policy as the WHATWG decoder.
inline DecodedText decode_utf8_lossy(std::string_view bytes) {
  DecodedText out;
  out.text.reserve(bytes.size());
  std::size_t i = 0;
  const std::size_t n = bytes.size();
  while (i < n) {
    const auto lead = static_cast<std::uint8_t>(bytes[i]);
    if (lead < 0x80) {
      out.text.push_back(static_cast<char>(lead));
      ++i;
      continue;
    }
    std::size_t length = 0;
    std::uint8_t lo = 0x80, hi = 0xBF;
    if (lead >= 0xC2 && lead <= 0xDF) {
      length = 2;
    } else if (lead >= 0xE0 && lead <= 0xEF) {
      length = 3;
      if (lead == 0xE0) lo = 0xA0;
      if (lead == 0xED) hi = 0x9F;
    } else if (lead >= 0xF0 && lead <= 0xF4) {
      length = 4;
      if (lead == 0xF0) lo = 0x90;
      if (lead == 0xF4) hi = 0x8F;
    }
    if (length == 0) {
      out.text += kReplacementCharacter;
      ++out.replacements;
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    bool ok = true;
    for (std::size_t k = 1; k < length; ++k, ++j) {
      if (j >= n) {
        ok = false;
        break;
      }
      const auto byte = static_cast<std::uint8_t>(bytes[j]);
      const std::uint8_t low = (k == 1) ? lo : std::uint8_t{0x80};
      const std::uint8_t high = (k == 1) ? hi : std::uint8_t{0xBF};
      if (byte < low || byte > high) {
        ok = false;
        break;
      }
    }
    if (ok) {
      out.text.append(bytes.substr(i, length));
    } else {
      out.text += kReplacementCharacter;
      ++out.replacements;
    }
    i = j;
  }
  return out;
}

// Decodes one code point from valid UTF-8 at `pos`, advancing `pos`.
inline char32_t next_code_point(std::string_view text, std::size_t& pos) {
  const auto lead = static_cast<std::uint8_t>(text[pos]);
  std::size_t length = lead < 0x80 ? 1 : lead < 0xE0 ? 2 : lead < 0xF0 ? 3 : 4;
  if (pos + length > text.size()) length = text.size() - pos;
  char32_t cp = length == 1 ? lead : length == 2 ? (lead & 0x1F) : length == 3 ? (lead & 0x0F) : (lead & 0x07);
  for (std::size_t k = 1; k < length; ++k) {
    cp = (cp << 6) | (static_cast<std::uint8_t>(text[pos + k]) & 0x3F);
  }
  pos += length;
  return cp;
}

}  // namespace kbtc
