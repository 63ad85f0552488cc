#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <fstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "kbtc/error.hpp"
#include "kbtc/representation.hpp"
#include "kbtc/tokenizer.hpp"

namespace kbtc {

struct KbArticle {
  std::string id;
  std::string title;
  std::string body;
  std::vector<std::string> categories;
  std::vector<std::string> links;

  friend bool operator==(const KbArticle&, const KbArticle&) = default;
};

// ---------------------------------------------------------------------------
// KB file format: one article per line, five TAB-separated fields
//   id, title, categories, links, body
// where categories and links are '|'-separated lists (empty field = empty
// list). Fields may not contain TAB or newline.

namespace detail {

inline std::vector<std::string> split_list(std::string_view field) {
  std::vector<std::string> out;
  if (field.empty()) return out;
  std::size_t start = 0;
  while (true) {
    auto bar = field.find('|', start);
    out.emplace_back(field.substr(start, bar == std::string_view::npos ? field.size() - start : bar - start));
    if (bar == std::string_view::npos) break;
    start = bar + 1;
  }
  return out;
}

inline std::string join_list(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += '|';
    out += items[i];
  }
  return out;
}

}  // namespace detail

inline KbArticle parse_kb_line(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    auto tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab == std::string_view::npos ? line.size() - start : tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  if (fields.size() != 5) {
    throw Error(ErrorCode::kKbFormat,
                "expected 5 TAB-separated fields, found " + std::to_string(fields.size()));
  }
  if (fields[0].empty()) throw Error(ErrorCode::kKbFormat, "empty article id");
  if (fields[1].empty()) {
    throw Error(ErrorCode::kKbFormat, "article '" + std::string(fields[0]) + "' has an empty title");
  }
  return KbArticle{std::string(fields[0]), std::string(fields[1]), std::string(fields[4]),
                   detail::split_list(fields[2]), detail::split_list(fields[3])};
}

inline std::string format_kb_line(const KbArticle& a) {
  std::string line = a.id;
  line += '\t';
  line += a.title;
  line += '\t';
  line += detail::join_list(a.categories);
  line += '\t';
  line += detail::join_list(a.links);
  line += '\t';
  line += a.body;
  return line;
}

inline std::vector<KbArticle> load_kb(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kNotFound, "KB file '" + path.string() + "' not found");
  std::vector<KbArticle> articles;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      articles.push_back(parse_kb_line(line));
    } catch (const Error& e) {
      throw Error(e.code(), path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return articles;
}

// ---------------------------------------------------------------------------

struct Posting {
  std::uint32_t article;  // ordinal into KbIndex::articles()
  std::uint32_t tf;
};

struct ScoredArticle {
  const KbArticle* article;
  std::size_t ordinal;
  double score;  // cosine similarity in [0, 1]
};

struct KbIndexStats {
  std::size_t articles = 0;
  std::size_t terms = 0;
  std::size_t postings = 0;
  std::size_t tokens = 0;
  std::size_t unreachable_articles = 0;  // zero TF-IDF norm
};

// Inverted TF-IDF index over article title + body. Term weights are raw
// counts times ln(N / df); article vectors are L2-normalized at query time
// through the stored norms. Immutable after construction.
class KbIndex {
 public:
  KbIndex(std::vector<KbArticle> articles, const StopList& stoplist)
      : articles_(std::move(articles)) {
    if (articles_.empty()) throw Error(ErrorCode::kEmptyKb, "knowledge base has no articles");
    std::unordered_set<std::string_view> ids;
    for (const auto& a : articles_) {
      if (!ids.insert(a.id).second) {
        throw Error(ErrorCode::kDuplicateArticleId, "duplicate article id '" + a.id + "'");
      }
    }

    for (std::size_t a = 0; a < articles_.size(); ++a) {
      const auto& article = articles_[a];
      TokenList tokens = process_t1(article.title, stoplist);
      TokenList body = process_t1(article.body, stoplist);
      tokens.insert(tokens.end(), std::make_move_iterator(body.begin()), std::make_move_iterator(body.end()));
      total_tokens_ += tokens.size();
      std::sort(tokens.begin(), tokens.end());
      for (std::size_t i = 0; i < tokens.size();) {
        std::size_t j = i;
        while (j < tokens.size() && tokens[j] == tokens[i]) ++j;
        auto [it, inserted] = term_ids_.try_emplace(tokens[i], static_cast<std::uint32_t>(postings_.size()));
        if (inserted) postings_.emplace_back();
        postings_[it->second].push_back(Posting{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(j - i)});
        i = j;
      }
    }

    const double n = static_cast<double>(articles_.size());
    idf_.resize(postings_.size());
    std::vector<double> squared(articles_.size(), 0.0);
    for (std::size_t t = 0; t < postings_.size(); ++t) {
      idf_[t] = std::log(n / static_cast<double>(postings_[t].size()));
      for (const auto& p : postings_[t]) {
        const double w = p.tf * idf_[t];
        squared[p.article] += w * w;
      }
    }
    norms_.resize(articles_.size());
    std::transform(squared.begin(), squared.end(), norms_.begin(), [](double s) { return std::sqrt(s); });
  }

  const std::vector<KbArticle>& articles() const noexcept { return articles_; }
  std::size_t size() const noexcept { return articles_.size(); }
  std::size_t term_count() const noexcept { return postings_.size(); }
  double doc_norm(std::size_t ordinal) const { return norms_.at(ordinal); }

  // Document frequency; 0 for terms not in the index.
  std::size_t df(std::string_view term) const {
    auto it = term_ids_.find(term);
    return it == term_ids_.end() ? 0 : postings_[it->second].size();
  }

  // ln(N / df) for indexed terms, nullopt otherwise.
  std::optional<double> idf(std::string_view term) const {
    auto it = term_ids_.find(term);
    if (it == term_ids_.end()) return std::nullopt;
    return idf_[it->second];
  }

  std::span<const Posting> postings(std::string_view term) const {
    auto it = term_ids_.find(term);
    if (it == term_ids_.end()) return {};
    return postings_[it->second];
  }

  KbIndexStats stats() const {
    KbIndexStats s;
    s.articles = articles_.size();
    s.terms = postings_.size();
    for (const auto& list : postings_) s.postings += list.size();
    s.tokens = total_tokens_;
    s.unreachable_articles = static_cast<std::size_t>(std::count(norms_.begin(), norms_.end(), 0.0));
    return s;
  }

  // Top-k articles by cosine similarity to the query's TF-IDF vector.
  // Zero-score articles are never returned. Ordering: descending score, then
  // ascending article id.
  std::vector<ScoredArticle> query_top_k(const TokenList& query_tokens, std::size_t k) const {
    if (k == 0) throw Error(ErrorCode::kInvalidArgument, "k must be positive");
    // Ordered by term id so the floating-point accumulation order is fixed.
    std::map<std::uint32_t, std::uint32_t> query_tf;
    for (const auto& token : query_tokens) {
      auto it = term_ids_.find(token);
      if (it != term_ids_.end()) ++query_tf[it->second];
    }

    std::vector<double> dot(articles_.size(), 0.0);
    double query_sq = 0.0;
    for (const auto& [t, tf] : query_tf) {
      const double wq = tf * idf_[t];
      if (wq == 0.0) continue;
      query_sq += wq * wq;
      for (const auto& p : postings_[t]) dot[p.article] += wq * (p.tf * idf_[t]);
    }
    if (query_sq == 0.0) return {};
    const double query_norm = std::sqrt(query_sq);

    std::vector<ScoredArticle> hits;
    for (std::size_t a = 0; a < articles_.size(); ++a) {
      if (dot[a] <= 0.0 || norms_[a] == 0.0) continue;
      const double score = std::min(1.0, dot[a] / (query_norm * norms_[a]));
      hits.push_back(ScoredArticle{&articles_[a], a, score});
    }
    auto better = [](const ScoredArticle& x, const ScoredArticle& y) {
      if (x.score != y.score) return x.score > y.score;
      return x.article->id < y.article->id;
    };
    if (hits.size() > k) {
      std::partial_sort(hits.begin(), hits.begin() + static_cast<std::ptrdiff_t>(k), hits.end(), better);
      hits.resize(k);
    } else {
      std::sort(hits.begin(), hits.end(), better);
    }
    return hits;
  }

 private:
  std::vector<KbArticle> articles_;
  StringMap<std::uint32_t> term_ids_;
  std::vector<std::vector<Posting>> postings_;
  std::vector<double> idf_;
  std::vector<double> norms_;
  std::size_t total_tokens_ = 0;
};

}  // namespace kbtc
