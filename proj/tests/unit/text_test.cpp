#include <gtest/gtest.h>

#include "docadopt/text.hpp"
#include "docadopt/types.hpp"

namespace docadopt {
namespace {

TEST(Tokenize, LowercasesAndDropsStopWords) {
  EXPECT_EQ(tokenize("The Quick brown FOX and the dog"), (std::vector<std::string>{"quick", "brown", "fox", "dog"}));
}

TEST(Tokenize, KeepsInnerHyphenAndDot) {
  EXPECT_EQ(tokenize("Report f1-score on Python 3.8."), (std::vector<std::string>{"report", "f1-score", "python", "3.8"}));
}

TEST(Tokenize, StopWordsCanBeKept) {
  TokenizerConfig c;
  c.remove_stop_words = false;
  EXPECT_EQ(tokenize("it is on", c), (std::vector<std::string>{"it", "is", "on"}));
}

TEST(Tokenize, MinimumLengthCountsCodePoints) {
  EXPECT_EQ(tokenize("é x über"), (std::vector<std::string>{"über"}));
  TokenizerConfig c;
  c.min_token_length = 1;
  EXPECT_EQ(tokenize("é x", c), (std::vector<std::string>{"é", "x"}));
}

TEST(Tokenize, UnicodeCaseFolding) { EXPECT_EQ(tokenize("ÜBERSICHT Straße"), (std::vector<std::string>{"übersicht", "straße"})); }

TEST(Ngrams, JoinsWithSpace) {
  EXPECT_EQ(ngrams({"a", "b", "c"}, 2), (std::vector<std::string>{"a", "b", "c", "a b", "b c"}));
}

TEST(StopWords, ListSize) {
  EXPECT_EQ(stop_word_count(), 318u);
  EXPECT_TRUE(is_stop_word("the"));
  EXPECT_FALSE(is_stop_word("license"));
}

TEST(Whitespace, CollapseAndTrim) {
  EXPECT_EQ(collapse_whitespace("  a \n\t b  "), "a b");
  EXPECT_EQ(trim("  x "), "x");
  EXPECT_EQ(normalize_for_dedup(" Hello   World "), "hello world");
}

TEST(Fnv, KnownValues) {
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(hex64(0xabcULL), "0000000000000abc");
}

TEST(TokenBoundary, MatchesWholeTokensOnly) {
  EXPECT_TRUE(contains_on_token_boundary("Use the Pivot tables here", "pivot tables"));
  EXPECT_FALSE(contains_on_token_boundary("pivoting tables", "pivot"));
  EXPECT_FALSE(contains_on_token_boundary("repivot", "pivot"));
  EXPECT_TRUE(contains_on_token_boundary("(pivot)", "pivot"));
  EXPECT_FALSE(contains_on_token_boundary("anything", ""));
}

TEST(Ids, SentenceIdUsesNormalizedText) {
  EXPECT_EQ(make_sentence_id("Hello  World"), make_sentence_id("hello world"));
  EXPECT_NE(make_page_id("a/b", "x.html"), make_page_id("a/b", "y.html"));
  EXPECT_EQ(make_page_id("a/b", "x.html").front(), 'p');
}

}  // namespace
}  // namespace docadopt
