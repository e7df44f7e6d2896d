#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace docadopt {

/// A repository whose hosted documentation is part of the corpus.
struct ProjectRef {
  std::string oss_domain;
  std::string repo_id;  // owner/name
  std::string docs_url;
  std::uint64_t stars = 0;

  bool operator==(const ProjectRef&) const = default;
};

/// One mirrored HTML page.
struct Page {
  std::string page_id;
  ProjectRef project;
  std::string path;  // site-relative, normalized
  std::string title;
  std::string raw_html;
};

/// Provenance record of a page once its HTML has been parsed away.
struct PageRecord {
  std::string page_id;
  std::string repo_id;
  std::string path;
  std::string title;

  bool operator==(const PageRecord&) const = default;
};

/// Innermost heading-delimited unit of a page (or a preamble block).
struct Section {
  std::string section_id;
  std::string page_id;
  std::vector<std::string> heading_path;  // outermost first
  std::string text;                       // paragraphs separated by "\n\n"
  std::vector<std::string> sentence_ids;

  bool operator==(const Section&) const = default;
};

struct Sentence {
  std::string sentence_id;
  std::string section_id;  // section where the text was first seen
  std::string text;

  bool operator==(const Sentence&) const = default;
};

std::string make_page_id(const std::string& repo_id, const std::string& path);
std::string make_sentence_id(const std::string& text);

}  // namespace docadopt
