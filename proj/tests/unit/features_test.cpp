#include <cmath>
#include <random>
#include <ranges>

#include <gtest/gtest.h>

#include "kbtc/features.hpp"

namespace kbtc {
namespace {

TEST(BuildVocab, CountsDocumentFrequency) {
  const std::vector<TokenList> docs = {{"a", "b"}, {"a", "c"}};
  const auto v = build_vocab(docs, 1);
  ASSERT_EQ(v.size(), 3u);
  EXPECT_EQ(*v.id("a"), 0u);
  EXPECT_EQ(*v.id("b"), 1u);
  EXPECT_EQ(*v.id("c"), 2u);
  EXPECT_EQ(v.df(0), 2u);
  EXPECT_EQ(v.df(1), 1u);
  EXPECT_EQ(v.df(2), 1u);
  EXPECT_EQ(v.document_count(), 2u);
}

TEST(BuildVocab, MinDfAndDuplicates) {
  const std::vector<TokenList> docs = {{"a", "b"}, {"a", "c"}};
  const auto v = build_vocab(docs, 2);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(*v.id("a"), 0u);
  EXPECT_FALSE(v.id("b"));

  const std::vector<TokenList> dup = {{"a", "a"}};
  EXPECT_EQ(build_vocab(dup).df(0), 1u);
}

TEST(BuildVocab, EmptyVocabulary) {
  const std::vector<TokenList> docs = {{"a"}, {"b"}};
  try {
    build_vocab(docs, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyVocabulary);
  }
  const std::vector<TokenList> none = {{}, {}};
  EXPECT_THROW(build_vocab(none), Error);
}

TEST(BuildVocab, SubsetViewMatchesCopy) {
  const std::vector<TokenList> all = {{"x", "y"}, {"y", "z"}, {"z", "w"}, {"x"}};
  const std::vector<std::size_t> subset = {0, 2};
  const auto view = Vocabulary::build(subset | std::views::transform([&](std::size_t i) -> const TokenList& {
                                        return all[i];
                                      }));
  const std::vector<TokenList> copy = {all[0], all[2]};
  const auto direct = build_vocab(copy);
  EXPECT_EQ(view.terms(), direct.terms());
  EXPECT_EQ(view.document_count(), 2u);
}

TEST(BuildVocab, RoundTripReconstructsDf) {
  std::mt19937 rng(3);
  std::vector<TokenList> docs(60);
  for (auto& d : docs) {
    for (int i = rng() % 15; i > 0; --i) d.push_back("t" + std::to_string(rng() % 40));
  }
  docs[0].push_back("t0");
  const auto v = build_vocab(docs);
  std::vector<std::size_t> df(v.size(), 0);
  for (const auto& d : docs) {
    for (const auto& e : vectorize_count(d, v)) ++df[e.id];
  }
  for (TermId t = 0; t < v.size(); ++t) EXPECT_EQ(df[t], v.df(t)) << v.terms()[t];
  // deterministic ids
  EXPECT_EQ(build_vocab(docs).terms(), v.terms());
  EXPECT_TRUE(std::is_sorted(v.terms().begin(), v.terms().end()));
}

TEST(VectorizeCount, RawFrequencies) {
  const std::vector<TokenList> docs = {{"a", "b"}, {"a", "c"}};
  const auto v = build_vocab(docs);
  EXPECT_EQ(vectorize_count({"a", "a", "b"}, v), (SparseVector{{0, 2.0}, {1, 1.0}}));
  EXPECT_TRUE(vectorize_count({"z"}, v).empty());
  EXPECT_TRUE(vectorize_count({}, v).empty());
  EXPECT_EQ(vectorize_count({"c", "a", "c"}, v), (SparseVector{{0, 1.0}, {2, 2.0}}));
}

TEST(VectorizeTfidf, HandComputedExample) {
  const std::vector<TokenList> docs = {{"a", "b"}, {"a"}};
  const auto v = build_vocab(docs);
  // a: 1 * ln(2/2) = 0; b: 1 * ln(2/1); after normalization b -> 1
  EXPECT_EQ(vectorize_tfidf({"a", "b"}, v), (SparseVector{{1, 1.0}}));
  EXPECT_TRUE(vectorize_tfidf({"a", "a"}, v).empty());
}

TEST(VectorizeTfidf, UnitNormAndScaleInvariance) {
  std::mt19937 rng(11);
  std::vector<TokenList> docs(30);
  for (auto& d : docs) {
    for (int i = 1 + rng() % 10; i > 0; --i) d.push_back("t" + std::to_string(rng() % 25));
  }
  const auto v = build_vocab(docs);
  for (const auto& d : docs) {
    const auto x = vectorize_tfidf(d, v);
    if (!x.empty()) {
      EXPECT_NEAR(squared_norm(x), 1.0, 1e-12);
    }
    for (std::size_t i = 1; i < x.size(); ++i) EXPECT_LT(x[i - 1].id, x[i].id);
    for (const auto& e : x) EXPECT_NE(e.weight, 0.0);
    TokenList tripled;
    for (int c = 0; c < 3; ++c) tripled.insert(tripled.end(), d.begin(), d.end());
    const auto y = vectorize_tfidf(tripled, v);
    ASSERT_EQ(x.size(), y.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      EXPECT_EQ(x[i].id, y[i].id);
      EXPECT_NEAR(x[i].weight, y[i].weight, 1e-12);
    }
  }
}

}  // namespace
}  // namespace kbtc
