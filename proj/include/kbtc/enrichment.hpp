#pragma once

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kbtc/error.hpp"
#include "kbtc/kb_index.hpp"
#include "kbtc/porter_stemmer.hpp"
#include "kbtc/representation.hpp"
#include "kbtc/tokenizer.hpp"

namespace kbtc {

enum class CandidateSource { kTitle, kCategory, kLink };

constexpr std::string_view candidate_source_name(CandidateSource s) {
  switch (s) {
    case CandidateSource::kTitle: return "TITLE";
    case CandidateSource::kCategory: return "CATEGORY";
    case CandidateSource::kLink: return "LINK";
  }
  return "?";
}

struct EnrichmentCandidate {
  CandidateSource source;
  std::string text;
  double score;  // retrieval score of the contributing article

  friend bool operator==(const EnrichmentCandidate&, const EnrichmentCandidate&) = default;
};

using CandidateList = std::vector<EnrichmentCandidate>;

// ---------------------------------------------------------------------------
// External entity lookup, applied to entity-tagged tokens ("location:x").
// No working public service exists for this any more, so the default client
// contributes nothing.

class ExternalEntityClient {
 public:
  virtual ~ExternalEntityClient() = default;
  virtual CandidateList lookup(std::string_view tagged_token) const = 0;
};

class NullEntityClient final : public ExternalEntityClient {
 public:
  CandidateList lookup(std::string_view) const override { return {}; }
};

// Offline stand-in backed by a `tagged_token<TAB>concept` file; each concept
// comes back as a LINK candidate with score 1.
class FileEntityClient final : public ExternalEntityClient {
 public:
  FileEntityClient() = default;
  explicit FileEntityClient(std::multimap<std::string, std::string, std::less<>> entries)
      : entries_(std::move(entries)) {}

  static FileEntityClient from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::kNotFound, "entity map '" + path.string() + "' not found");
    std::multimap<std::string, std::string, std::less<>> entries;
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      auto tab = line.find('\t');
      if (tab == std::string::npos) {
        throw Error(ErrorCode::kInvalidArgument, path.string() + ": expected surface<TAB>concept");
      }
      entries.emplace(line.substr(0, tab), line.substr(tab + 1));
    }
    return FileEntityClient(std::move(entries));
  }

  CandidateList lookup(std::string_view tagged_token) const override {
    CandidateList out;
    auto [first, last] = entries_.equal_range(tagged_token);
    for (auto it = first; it != last; ++it) out.push_back({CandidateSource::kLink, it->second, 1.0});
    return out;
  }

 private:
  std::multimap<std::string, std::string, std::less<>> entries_;
};

// ---------------------------------------------------------------------------

enum class Approach { kA1, kA2, kA3, kA4, kA5 };

constexpr std::string_view approach_name(Approach a) {
  switch (a) {
    case Approach::kA1: return "A1";
    case Approach::kA2: return "A2";
    case Approach::kA3: return "A3";
    case Approach::kA4: return "A4";
    case Approach::kA5: return "A5";
  }
  return "?";
}

inline std::optional<Approach> parse_approach(std::string_view name) {
  if (name == "A1") return Approach::kA1;
  if (name == "A2") return Approach::kA2;
  if (name == "A3") return Approach::kA3;
  if (name == "A4") return Approach::kA4;
  if (name == "A5") return Approach::kA5;
  return std::nullopt;
}

struct EnrichmentTechniques {
  bool e1 = false;  // top similar articles: titles + categories
  bool e2 = false;  // as e1 plus linked concepts
  bool e4 = false;  // relative-score filter + dedup
  bool e5 = false;  // noise/delimiter cleanup

  friend bool operator==(const EnrichmentTechniques&, const EnrichmentTechniques&) = default;
};

struct ApproachConfig {
  Approach name = Approach::kA1;
  std::size_t k = 5;
  bool include_links = false;
  EnrichmentTechniques techniques;
  double filter_tau = 0.5;
};

inline constexpr double kDefaultFilterTau = 0.5;

inline ApproachConfig make_approach(Approach name, double filter_tau = kDefaultFilterTau) {
  switch (name) {
    case Approach::kA1: return {name, 5, false, {true, false, true, true}, filter_tau};
    case Approach::kA2: return {name, 20, false, {true, false, true, true}, filter_tau};
    case Approach::kA3: return {name, 5, true, {false, true, true, true}, filter_tau};
    case Approach::kA4: return {name, 20, true, {false, true, true, true}, filter_tau};
    case Approach::kA5: return {name, 20, true, {true, true, true, true}, filter_tau};
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown approach");
}

struct EnrichmentOptions {
  StopList stoplist = StopList::english();
  bool stem_enrichment = true;
  // Only consulted when set; lookups go to entity-tagged document tokens.
  std::shared_ptr<const ExternalEntityClient> entity_client;
};

// ---------------------------------------------------------------------------

namespace detail {

inline void emit_article(const ScoredArticle& hit, bool with_links, CandidateList& out) {
  out.push_back({CandidateSource::kTitle, hit.article->title, hit.score});
  for (const auto& c : hit.article->categories) out.push_back({CandidateSource::kCategory, c, hit.score});
  if (with_links) {
    for (const auto& l : hit.article->links) out.push_back({CandidateSource::kLink, l, hit.score});
  }
}

inline std::string normalize_candidate_text(std::string_view text) {
  std::string out;
  bool pending_space = false;
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (std::isspace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(static_cast<char>(std::tolower(c)));
  }
  return out;
}

}  // namespace detail

// Titles and categories of the top-k articles, in rank order.
inline CandidateList enrich_e1(const TokenList& doc_tokens, const KbIndex& index, std::size_t k) {
  CandidateList out;
  for (const auto& hit : index.query_top_k(doc_tokens, k)) detail::emit_article(hit, false, out);
  return out;
}

// Titles, categories and linked concepts of the top-k articles.
inline CandidateList enrich_e2(const TokenList& doc_tokens, const KbIndex& index, std::size_t k) {
  CandidateList out;
  for (const auto& hit : index.query_top_k(doc_tokens, k)) detail::emit_article(hit, true, out);
  return out;
}

// Keeps candidates scoring at least tau * (max score) and collapses
// duplicates by (source, case/space-normalized text) to their best score.
// Survivors keep the position of their first occurrence.
inline CandidateList filter_e4(const CandidateList& candidates, double tau) {
  if (!(tau > 0.0 && tau <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "filter tau must lie in (0, 1]");
  }
  double max_score = 0.0;
  for (const auto& c : candidates) max_score = std::max(max_score, c.score);
  const double threshold = tau * max_score;

  CandidateList out;
  std::map<std::pair<CandidateSource, std::string>, std::size_t> seen;
  for (const auto& c : candidates) {
    if (c.score < threshold) continue;
    auto key = std::make_pair(c.source, detail::normalize_candidate_text(c.text));
    auto [it, inserted] = seen.try_emplace(std::move(key), out.size());
    if (inserted) {
      out.push_back(c);
    } else if (c.score > out[it->second].score) {
      out[it->second].score = c.score;
    }
  }
  return out;
}

// Removes one trailing parenthetical qualifier: "City (film)" -> "City".
inline std::string_view strip_parenthetical(std::string_view text) {
  auto end = text.find_last_not_of(" \t");
  if (end == std::string_view::npos || text[end] != ')') return text;
  int depth = 0;
  for (std::size_t i = end + 1; i-- > 0;) {
    if (text[i] == ')') {
      ++depth;
    } else if (text[i] == '(' && --depth == 0) {
      auto head = text.substr(0, i);
      auto last = head.find_last_not_of(" \t");
      return last == std::string_view::npos ? std::string_view{} : head.substr(0, last + 1);
    }
  }
  return text;
}

inline TokenList clean_e5(std::string_view candidate_text, const StopList& stoplist, bool stem) {
  TokenList tokens = remove_stopwords(tokenize(strip_parenthetical(candidate_text)), stoplist);
  if (stem) {
    PorterStemmer stemmer;
    for (auto& t : tokens) t = stemmer.stem(t);
  }
  return tokens;
}

// Candidates that an approach would add to a document, after E4 when
// configured.
inline CandidateList collect_candidates(const TokenList& doc_tokens, const ApproachConfig& config,
                                        const KbIndex& index, const EnrichmentOptions& options) {
  CandidateList candidates;
  if (config.techniques.e1) {
    auto e1 = enrich_e1(doc_tokens, index, config.k);
    candidates.insert(candidates.end(), e1.begin(), e1.end());
  }
  if (config.techniques.e2) {
    auto e2 = config.include_links ? enrich_e2(doc_tokens, index, config.k)
                                   : enrich_e1(doc_tokens, index, config.k);
    candidates.insert(candidates.end(), e2.begin(), e2.end());
  }
  if (options.entity_client) {
    for (const auto& token : doc_tokens) {
      if (!is_tagged_token(token)) continue;
      auto found = options.entity_client->lookup(token);
      candidates.insert(candidates.end(), found.begin(), found.end());
    }
  }
  if (config.techniques.e4) return filter_e4(candidates, config.filter_tau);
  return candidates;
}

// Document tokens first, unchanged, followed by the cleaned tokens of each
// surviving candidate.
inline TokenList apply_approach(const TokenList& doc_tokens, const ApproachConfig& config,
                                const KbIndex& index, const EnrichmentOptions& options) {
  TokenList out = doc_tokens;
  for (const auto& candidate : collect_candidates(doc_tokens, config, index, options)) {
    TokenList extra;
    if (config.techniques.e5) {
      extra = clean_e5(candidate.text, options.stoplist, options.stem_enrichment);
    } else {
      extra = tokenize(candidate.text);
      if (options.stem_enrichment) {
        for (auto& t : extra) t = porter_stem(t);
      }
    }
    out.insert(out.end(), std::make_move_iterator(extra.begin()), std::make_move_iterator(extra.end()));
  }
  return out;
}

}  // namespace kbtc
