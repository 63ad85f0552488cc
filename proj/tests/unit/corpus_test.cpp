#include <gtest/gtest.h>

#include "kbtc/corpus.hpp"
#include "test_support.hpp"

namespace kbtc {
namespace {

using testing::TempDir;
using testing::write_file;

TEST(LoadCorpus, LexicographicCategoriesAndDocuments) {
  TempDir dir;
  write_file(dir / "sci/b.txt", "second");
  write_file(dir / "sci/a.txt", "first");
  write_file(dir / "rec/c.txt", "third");
  const auto loaded = load_corpus(dir.path());
  const auto& corpus = loaded.corpus;
  ASSERT_EQ(corpus.size(), 3u);
  EXPECT_EQ(corpus.categories(), (std::vector<std::string>{"rec", "sci"}));
  EXPECT_EQ(corpus.documents()[0].id, "rec/c.txt");
  EXPECT_EQ(corpus.documents()[1].id, "sci/a.txt");
  EXPECT_EQ(corpus.documents()[2].id, "sci/b.txt");
  EXPECT_EQ(corpus.documents()[1].raw_text, "first");
  EXPECT_EQ(corpus.labels(), (std::vector<std::size_t>{0, 1, 1}));
  EXPECT_EQ(loaded.decode_replacements, 0u);

  const auto stats = corpus_stats(corpus);
  EXPECT_EQ(stats.at("rec"), 1u);
  EXPECT_EQ(stats.at("sci"), 2u);
}

TEST(LoadCorpus, EmptyFileIsLegal) {
  TempDir dir;
  write_file(dir / "only/empty.txt", "");
  const auto corpus = load_corpus(dir.path()).corpus;
  ASSERT_EQ(corpus.size(), 1u);
  EXPECT_EQ(corpus.documents()[0].raw_text, "");
  EXPECT_EQ(corpus_stats(corpus).at("only"), 1u);
}

TEST(LoadCorpus, BalancedTwentyByThousand) {
  TempDir dir;
  for (int c = 0; c < 20; ++c) {
    for (int d = 0; d < 1000; ++d) {
      write_file(dir / ("cat" + std::to_string(c) + "/" + std::to_string(d)), "x");
    }
  }
  const auto corpus = load_corpus(dir.path()).corpus;
  EXPECT_EQ(corpus.size(), 20000u);
  EXPECT_EQ(corpus.num_classes(), 20u);
  for (const auto& [category, count] : corpus_stats(corpus)) EXPECT_EQ(count, 1000u) << category;
}

TEST(LoadCorpus, Errors) {
  TempDir dir;
  try {
    load_corpus(dir / "missing");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotFound);
  }
  write_file(dir / "stray.txt", "not in a category");
  try {
    load_corpus(dir.path());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyCorpus);
  }
}

TEST(LoadCorpus, ReplacesIllFormedUtf8) {
  TempDir dir;
  write_file(dir / "c/d", "ok \xC3\xA9 bad \xFF end \xE2\x82");
  const auto loaded = load_corpus(dir.path());
  EXPECT_EQ(loaded.decode_replacements, 2u);
  EXPECT_EQ(loaded.corpus.documents()[0].raw_text, "ok \xC3\xA9 bad \xEF\xBF\xBD end \xEF\xBF\xBD");
}

TEST(LoadCorpus, OptionalHeaderStripping) {
  TempDir dir;
  write_file(dir / "c/d", "From: someone\nSubject: hi\n\nbody text\n");
  EXPECT_EQ(load_corpus(dir.path()).corpus.documents()[0].raw_text, "From: someone\nSubject: hi\n\nbody text\n");
  EXPECT_EQ(load_corpus(dir.path(), {.strip_headers = true}).corpus.documents()[0].raw_text, "body text\n");
}

TEST(LoadCorpus, Deterministic) {
  TempDir dir;
  for (const char* name : {"z/1", "a/9", "a/10", "m/x", "m/a"}) write_file(dir / name, name);
  EXPECT_TRUE(load_corpus(dir.path()).corpus == load_corpus(dir.path()).corpus);
}

TEST(LabeledCorpus, RejectsBrokenInvariants) {
  EXPECT_THROW(LabeledCorpus({}, {}), Error);
  EXPECT_THROW(LabeledCorpus({{"a", "", "x"}}, {"y"}), Error);
  EXPECT_THROW(LabeledCorpus({{"a", "", "x"}, {"a", "", "x"}}, {"x"}), Error);
  EXPECT_THROW(LabeledCorpus({}, {"x", "x"}), Error);
  const LabeledCorpus single({{"a", "", "x"}, {"b", "", "x"}}, {"x"});
  EXPECT_EQ(corpus_stats(single).at("x"), 2u);
}

TEST(Utf8, MaximalSubpartReplacement) {
  // Truncated three-byte sequence followed by ASCII: one replacement.
  EXPECT_EQ(decode_utf8_lossy("\xE2\x82" "a").text, "\xEF\xBF\xBD" "a");
  // Surrogate encodings are ill-formed byte by byte.
  EXPECT_EQ(decode_utf8_lossy("\xED\xA0\x80").replacements, 3u);
  EXPECT_EQ(decode_utf8_lossy("\xF0\x9F\x98\x80").replacements, 0u);
}

}  // namespace
}  // namespace kbtc
