#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <concepts>
#include <ranges>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kbtc/error.hpp"
#include "kbtc/tokenizer.hpp"

namespace kbtc {

using TermId = std::uint32_t;

struct SparseEntry {
  TermId id;
  double weight;

  friend bool operator==(const SparseEntry&, const SparseEntry&) = default;
};

// Strictly increasing ids, no zero weights.
using SparseVector = std::vector<SparseEntry>;

inline double dot(const SparseVector& x, std::span<const double> dense) {
  double s = 0.0;
  for (const auto& e : x) s += e.weight * dense[e.id];
  return s;
}

inline double squared_norm(const SparseVector& x) {
  double s = 0.0;
  for (const auto& e : x) s += e.weight * e.weight;
  return s;
}

// Term -> contiguous id over the training documents, with document
// frequencies. Ids follow lexicographic term order.
class Vocabulary {
 public:
  std::size_t size() const noexcept { return terms_.size(); }
  std::size_t document_count() const noexcept { return document_count_; }
  const std::vector<std::string>& terms() const noexcept { return terms_; }
  std::size_t df(TermId id) const { return df_.at(id); }

  std::optional<TermId> id(std::string_view term) const {
    auto it = ids_.find(term);
    if (it == ids_.end()) return std::nullopt;
    return it->second;
  }

  double idf(TermId id) const {
    return std::log(static_cast<double>(document_count_) / static_cast<double>(df_[id]));
  }

  // `token_lists` is any range of TokenList (e.g. a view over the training
  // subset of a larger collection).
  template <std::ranges::input_range Lists>
    requires std::convertible_to<std::ranges::range_reference_t<Lists>, const TokenList&>
  static Vocabulary build(Lists&& token_lists, std::size_t min_df = 1) {
    if (min_df < 1) throw Error(ErrorCode::kInvalidArgument, "min_df must be at least 1");
    std::map<std::string, std::size_t, std::less<>> counts;
    std::vector<std::string_view> unique;
    std::size_t documents = 0;
    for (const TokenList& tokens : token_lists) {
      ++documents;
      unique.assign(tokens.begin(), tokens.end());
      std::sort(unique.begin(), unique.end());
      unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
      for (auto t : unique) {
        auto it = counts.find(t);
        if (it == counts.end()) {
          counts.emplace(std::string(t), 1);
        } else {
          ++it->second;
        }
      }
    }

    Vocabulary vocab;
    vocab.document_count_ = documents;
    for (auto& [term, df] : counts) {
      if (df < min_df) continue;
      vocab.ids_.emplace(term, static_cast<TermId>(vocab.terms_.size()));
      vocab.terms_.push_back(term);
      vocab.df_.push_back(df);
    }
    if (vocab.terms_.empty()) {
      throw Error(ErrorCode::kEmptyVocabulary, "no term reaches min_df = " + std::to_string(min_df));
    }
    return vocab;
  }

 private:
  std::vector<std::string> terms_;
  std::vector<std::size_t> df_;
  StringMap<TermId> ids_;
  std::size_t document_count_ = 0;
};

inline Vocabulary build_vocab(std::span<const TokenList> token_lists, std::size_t min_df = 1) {
  return Vocabulary::build(token_lists, min_df);
}

// Raw term frequencies; out-of-vocabulary tokens are dropped.
inline SparseVector vectorize_count(const TokenList& tokens, const Vocabulary& vocab) {
  std::vector<TermId> ids;
  ids.reserve(tokens.size());
  for (const auto& t : tokens) {
    if (auto id = vocab.id(t)) ids.push_back(*id);
  }
  std::sort(ids.begin(), ids.end());
  SparseVector out;
  for (std::size_t i = 0; i < ids.size();) {
    std::size_t j = i;
    while (j < ids.size() && ids[j] == ids[i]) ++j;
    out.push_back({ids[i], static_cast<double>(j - i)});
    i = j;
  }
  return out;
}

// tf * ln(N / df), L2-normalized. Terms with df = N vanish; an all-vanished
// document is the empty vector.
inline SparseVector vectorize_tfidf(const TokenList& tokens, const Vocabulary& vocab) {
  SparseVector counts = vectorize_count(tokens, vocab);
  SparseVector out;
  out.reserve(counts.size());
  double sq = 0.0;
  for (const auto& e : counts) {
    const double w = e.weight * vocab.idf(e.id);
    if (w == 0.0) continue;
    out.push_back({e.id, w});
    sq += w * w;
  }
  if (sq > 0.0) {
    const double norm = std::sqrt(sq);
    for (auto& e : out) e.weight /= norm;
  }
  return out;
}

}  // namespace kbtc
