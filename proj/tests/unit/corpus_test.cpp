#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "docadopt/corpus/builder.hpp"
#include "docadopt/corpus/index.hpp"
#include "docadopt/corpus/store.hpp"
#include "docadopt/errors.hpp"
#include "docadopt/ingest/sections.hpp"
#include "docadopt/text.hpp"
#include "docadopt_testkit/fixtures.hpp"
#include "docadopt_testkit/oracles.hpp"
#include "docadopt_testkit/schema.hpp"

namespace docadopt::corpus {
namespace {

using testkit::fixture_path;
using testkit::TokenizedSection;

const CorpusStore& fixture_store() {
  static const CorpusStore store = build_from_mirror(fixture_path("mirror"));
  return store;
}

const DomainIndex& fixture_index() {
  static const DomainIndex index = build_index(fixture_store());
  return index;
}

// Paragraph-level recount, independent of the sentence splitter.
std::vector<TokenizedSection> fixture_token_sections() {
  std::vector<TokenizedSection> out;
  const auto& store = fixture_store();
  for (const auto& section : store.sections()) {
    TokenizedSection t{store.section_domain(section), {}};
    std::size_t start = 0;
    while (start <= section.text.size()) {
      auto end = section.text.find("\n\n", start);
      if (end == std::string::npos) end = section.text.size();
      const auto para = section.text.substr(start, end - start);
      if (trim(para) != ingest::kCodePlaceholder) {
        for (auto& tok : tokenize(para)) t.tokens.push_back(std::move(tok));
      }
      start = end + 2;
    }
    out.push_back(std::move(t));
  }
  return out;
}

ProjectRef project(const std::string& repo, const std::string& domain) {
  return ProjectRef{domain, repo, "https://" + repo.substr(repo.find('/') + 1) + ".readthedocs.io/", 1};
}

TEST(Store, DeduplicatesSentencesAndChecksReferences) {
  CorpusStore store;
  store.add_project(project("o/a", "devops"));
  store.add_page({"pg", "o/a", "index.html", "Index"});
  Section s1{"pg:0", "pg", {"Index"}, "Hello world. Bye.", {make_sentence_id("Hello world."), make_sentence_id("Bye.")}};
  store.add_section(s1, {{s1.sentence_ids[0], "pg:0", "Hello world."}, {s1.sentence_ids[1], "pg:0", "Bye."}});
  Section s2{"pg:1", "pg", {"Index", "More"}, "hello   WORLD.", {make_sentence_id("hello   WORLD.")}};
  store.add_section(s2, {{s2.sentence_ids[0], "pg:1", "hello   WORLD."}});
  store.seal();
  EXPECT_EQ(store.sentences().size(), 2u);
  EXPECT_EQ(store.find_sentence(s2.sentence_ids[0])->section_id, "pg:0");
  EXPECT_NO_THROW(store.check_integrity());
  EXPECT_EQ(store.section_domain(s2), "devops");
  EXPECT_THROW(store.add_project(project("o/b", "devops")), Error);
}

TEST(Store, DanglingPageIsRejected) {
  CorpusStore store;
  store.add_project(project("o/a", "devops"));
  Section s{"missing:0", "missing", {"T"}, "Text.", {make_sentence_id("Text.")}};
  EXPECT_THROW(
      {
        store.add_section(s, {{s.sentence_ids[0], "missing:0", "Text."}});
        store.seal();
        store.check_integrity();
      },
      Error);
}

TEST(Store, FixtureRoundTripAndSchema) {
  testkit::TempDir dir("corpus");
  save_corpus(fixture_store(), dir.path());
  const auto loaded = load_corpus(dir.path());
  EXPECT_TRUE(loaded == fixture_store());
  EXPECT_TRUE(loaded.sealed());
  const auto schema = testkit::load_json(testkit::repo_path("schemas/corpus_records.schema.json"));
  for (const auto* file : {"pages.jsonl", "sections.jsonl", "sentences.jsonl"}) {
    for (const auto& record : testkit::load_jsonl(dir / file)) {
      ASSERT_EQ(testkit::validate_schema(schema, record), std::vector<std::string>{}) << file;
    }
  }
}

TEST(Store, FixtureCounts) {
  const auto& store = fixture_store();
  EXPECT_EQ(store.projects().size(), 12u);
  EXPECT_EQ(store.pages().size(), 48u);
  EXPECT_EQ(store.sections().size(), 216u);
  EXPECT_EQ(store.domains().size(), 6u);
  std::set<std::string> keys;
  for (const auto& s : store.sentences()) EXPECT_TRUE(keys.insert(normalize_for_dedup(s.text)).second);
}

TEST(Index, FixtureStatisticsMatchBruteForceRecount) {
  const auto sections = fixture_token_sections();
  const auto& index = fixture_index();
  EXPECT_EQ(index.domain_count(), 6u);
  std::set<std::string> vocabulary;
  for (const auto& s : sections) vocabulary.insert(s.tokens.begin(), s.tokens.end());
  EXPECT_EQ(index.vocabulary_size(), vocabulary.size());
  for (const auto& domain : index.domains()) {
    for (const auto& term : vocabulary) {
      const auto expected = testkit::recount(term, domain, sections);
      const auto got = index.stats(term, domain);
      ASSERT_EQ(got.tf, expected.tf) << term << " in " << domain;
      ASSERT_EQ(got.df, expected.df) << term << " in " << domain;
      ASSERT_EQ(index.n_sections(domain), expected.n_sections);
      ASSERT_EQ(index.df_dom(term), expected.df_dom) << term;
    }
  }
}

TEST(Index, InvariantsHold) {
  const auto& index = fixture_index();
  for (const auto& domain : index.domains()) {
    const auto& d = index.domain(domain);
    for (const auto& [term, stats] : d.terms) {
      EXPECT_LE(stats.df, d.n_sections);
      EXPECT_GE(stats.tf, stats.df);
      EXPECT_GE(index.df_dom(term), 1u);
      EXPECT_LE(index.df_dom(term), index.domain_count());
    }
  }
}

TEST(Index, CodePlaceholderIsNotCounted) {
  CorpusStore store;
  store.add_project(project("o/a", "devops"));
  store.add_page({"pg", "o/a", "index.html", "Index"});
  Section s{"pg:0", "pg", {"Index"}, "Install it:\n\n[code]\n\nDone now.", {}};
  const auto sentences = ingest::section_sentences(s);
  for (const auto& x : sentences) s.sentence_ids.push_back(x.sentence_id);
  store.add_section(s, sentences);
  store.seal();
  const auto index = build_index(store);
  EXPECT_FALSE(index.in_vocabulary("code"));
  EXPECT_TRUE(index.in_vocabulary("install"));
}

TEST(Index, RoundTrip) {
  testkit::TempDir dir("index");
  save_index(fixture_index(), dir / "index.json");
  EXPECT_TRUE(load_index(dir / "index.json") == fixture_index());
}

TEST(Index, UnknownDomainThrows) {
  EXPECT_THROW(tech_score("x", "cooking", fixture_index()), NotFound);
  EXPECT_THROW(top_terms("x", "cooking", fixture_index(), 3), NotFound);
}

TEST(TechScore, MatchesOracleOnFixture) {
  const auto sections = fixture_token_sections();
  const auto& index = fixture_index();
  for (const auto& domain : index.domains()) {
    for (const auto& [term, stats] : index.domain(domain).terms) {
      const double expected = testkit::tech_score_oracle(term, domain, sections);
      ASSERT_LE(testkit::relative_error(expected, tech_score(term, domain, index)), 1e-12) << term;
    }
  }
}

TEST(TechScore, ZeroWhenTermInEveryDomainOrAbsent) {
  const auto& index = fixture_index();
  EXPECT_EQ(index.df_dom("license"), 6u);
  EXPECT_EQ(tech_score("license", "devops", index), 0.0);
  EXPECT_EQ(tech_score("zzzz", "devops", index), 0.0);
}

TEST(TopTerms, FixtureParagraphRankingMatchesOracle) {
  const std::string paragraph = testkit::read_file(fixture_path("mentor/functional.txt"));
  const auto sections = fixture_token_sections();
  std::vector<std::pair<std::string, double>> expected;
  std::set<std::string> seen;
  for (const auto& t : tokenize(paragraph)) {
    if (!seen.insert(t).second) continue;
    const double s = testkit::tech_score_oracle(t, "data-science", sections);
    if (s > 0.0) expected.emplace_back(t, s);
  }
  std::sort(expected.begin(), expected.end(),
            [](const auto& a, const auto& b) { return a.second != b.second ? a.second > b.second : a.first < b.first; });
  expected.resize(3);
  const auto got = top_terms(paragraph, "data-science", fixture_index(), 3);
  ASSERT_EQ(got.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(got[i].first, expected[i].first);
    EXPECT_LE(testkit::relative_error(expected[i].second, got[i].second), 1e-12);
  }
}

TEST(TopTerms, RejectsZeroK) { EXPECT_THROW(top_terms("x", "devops", fixture_index(), 0), InvalidArgument); }

}  // namespace
}  // namespace docadopt::corpus
