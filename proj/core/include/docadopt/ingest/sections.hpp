#pragma once

#include <string>
#include <vector>

#include "docadopt/ingest/html.hpp"
#include "docadopt/types.hpp"

namespace docadopt::ingest {

/// Token that stands in for a code block embedded in a prose section.
inline constexpr std::string_view kCodePlaceholder = "[code]";

/// A section plus the DOM text nodes it was assembled from.
struct TracedSection {
  Section section;
  std::vector<html::NodeId> text_nodes;
};

/// Element whose whole subtree is navigation, chrome or non-prose markup.
bool is_excluded_element(const html::Document& doc, html::NodeId id);

/// <pre> and highlighted-code containers.
bool is_code_block(const html::Document& doc, html::NodeId id);

/// Main content container (Sphinx `div.body`, `[role=main]`, `<main>`), else <body>,
/// else the document root.
html::NodeId content_root(const html::Document& doc);

/// Innermost sections and preambles of a page, in document order.
std::vector<Section> extract_sections(const Page& page);
std::vector<TracedSection> extract_sections_traced(const Page& page, const html::Document& doc);

/// Sentence records of a section (placeholder-only pieces dropped).
std::vector<Sentence> section_sentences(const Section& section);

}  // namespace docadopt::ingest
