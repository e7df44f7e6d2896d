#pragma once

#include <filesystem>
#include <string>
#include <unordered_map>
#include <vector>

#include "docadopt/types.hpp"

namespace docadopt::corpus {

inline constexpr int kCorpusFormatVersion = 1;

/// Parsed documentation corpus. Append-only until sealed, immutable after.
///
/// Sentences are deduplicated corpus-wide by normalized text: a section's
/// sentence_ids may point at a sentence first seen in another section.
class CorpusStore {
 public:
  void add_project(const ProjectRef& project);
  void add_page(const PageRecord& page);
  /// Adds the section and any of its sentences not already present.
  void add_section(Section section, const std::vector<Sentence>& sentences);
  void seal();

  bool sealed() const { return sealed_; }
  const std::vector<ProjectRef>& projects() const { return projects_; }
  const std::vector<PageRecord>& pages() const { return pages_; }
  const std::vector<Section>& sections() const { return sections_; }
  const std::vector<Sentence>& sentences() const { return sentences_; }

  /// Sorted distinct domains of all projects.
  std::vector<std::string> domains() const;

  const ProjectRef* find_project(const std::string& repo_id) const;
  const PageRecord* find_page(const std::string& page_id) const;
  const Section* find_section(const std::string& section_id) const;
  const Sentence* find_sentence(const std::string& sentence_id) const;

  /// Domain of the project owning a section; throws NotFound.
  const std::string& section_domain(const Section& section) const;
  const std::string& section_repo(const Section& section) const;

  /// Throws FormatError describing the first dangling reference.
  void check_integrity() const;

  bool operator==(const CorpusStore& other) const;

 private:
  void require_open() const;

  bool sealed_ = false;
  std::vector<ProjectRef> projects_;
  std::vector<PageRecord> pages_;
  std::vector<Section> sections_;
  std::vector<Sentence> sentences_;
  std::unordered_map<std::string, std::size_t> project_pos_, page_pos_, section_pos_, sentence_pos_;
};

/// Directory layout: manifest.json, pages.jsonl, sections.jsonl, sentences.jsonl.
void save_corpus(const CorpusStore& store, const std::filesystem::path& dir);
CorpusStore load_corpus(const std::filesystem::path& dir);

}  // namespace docadopt::corpus
