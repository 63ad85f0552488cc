#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "kbtc/default_stopwords.hpp"
#include "kbtc/error.hpp"
#include "kbtc/utf8.hpp"

namespace kbtc {

// Lowercase tokens in document order. Duplicates are meaningful.
using TokenList = std::vector<std::string>;

// Enables string_view lookups in unordered containers keyed by std::string.
struct StringHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const noexcept {
    return std::hash<std::string_view>{}(s);
  }
};

template <typename Value>
using StringMap = std::unordered_map<std::string, Value, StringHash, std::equal_to<>>;
using StringSet = std::unordered_set<std::string, StringHash, std::equal_to<>>;

// Stop lists are looked up by exact (lowercase) string.
class StopList {
 public:
  StopList() = default;
  explicit StopList(StringSet words) : words_(std::move(words)) {}
  StopList(std::initializer_list<std::string_view> words) {
    for (auto w : words) words_.emplace(w);
  }

  static StopList english() {
    StopList list;
    for (auto w : kDefaultStopwords) list.words_.emplace(w);
    return list;
  }

  // One word per line, UTF-8. Blank lines and surrounding whitespace ignored;
  // entries are lowercased.
  static StopList from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::kNotFound, "stop-word file '" + path.string() + "' not found");
    StopList list;
    std::string line;
    while (std::getline(in, line)) {
      auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos) continue;
      auto last = line.find_last_not_of(" \t\r");
      std::string word = line.substr(first, last - first + 1);
      std::transform(word.begin(), word.end(), word.begin(),
                     [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
      list.words_.insert(std::move(word));
    }
    return list;
  }

  bool contains(std::string_view word) const { return words_.contains(word); }
  std::size_t size() const noexcept { return words_.size(); }
  const StringSet& words() const noexcept { return words_; }

 private:
  StringSet words_;
};

namespace detail {

// Non-ASCII code points are word characters except for replacement
// characters and the common Unicode punctuation/space blocks.
constexpr bool is_word_code_point(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= '0' && cp <= '9') || (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z');
  }
  if (cp <= 0xBF) return false;                      // C1 controls, Latin-1 punctuation
  if (cp == 0xD7 || cp == 0xF7) return false;        // multiplication, division
  if (cp >= 0x2000 && cp <= 0x2BFF) return false;    // punctuation, symbols, arrows
  if (cp >= 0x3000 && cp <= 0x303F) return false;    // CJK punctuation
  if (cp >= 0xFE30 && cp <= 0xFE4F) return false;
  if (cp >= 0xFF00 && cp <= 0xFF0F) return false;
  if (cp == 0xFEFF || cp == 0xFFFD) return false;
  return true;
}

inline bool all_ascii_digits(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace detail

// Splits on every non-alphanumeric character and lowercases ASCII letters.
// Pure-digit fragments and single-character fragments are dropped.
inline TokenList tokenize(std::string_view raw_text) {
  TokenList tokens;
  std::string current;
  std::size_t current_length = 0;
  auto flush = [&] {
    if (current_length >= 2 && !detail::all_ascii_digits(current)) tokens.push_back(current);
    current.clear();
    current_length = 0;
  };

  std::size_t pos = 0;
  while (pos < raw_text.size()) {
    const std::size_t start = pos;
    const char32_t cp = next_code_point(raw_text, pos);
    if (!detail::is_word_code_point(cp)) {
      flush();
      continue;
    }
    if (cp < 0x80) {
      current.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(cp))));
    } else {
      current.append(raw_text.substr(start, pos - start));
    }
    ++current_length;
  }
  flush();
  return tokens;
}

inline TokenList remove_stopwords(const TokenList& tokens, const StopList& stoplist) {
  TokenList kept;
  kept.reserve(tokens.size());
  std::copy_if(tokens.begin(), tokens.end(), std::back_inserter(kept),
               [&](const std::string& t) { return !stoplist.contains(t); });
  return kept;
}

}  // namespace kbtc
