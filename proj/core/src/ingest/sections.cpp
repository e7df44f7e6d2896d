#include "docadopt/ingest/sections.hpp"

#include <algorithm>
#include <array>

#include "docadopt/ingest/sentences.hpp"
#include "docadopt/text.hpp"

namespace docadopt::ingest {

namespace {

using html::Document;
using html::NodeId;
using html::NodeKind;

constexpr std::array<std::string_view, 12> kExcludedTags = {
    "nav", "footer", "aside", "script", "style", "noscript", "template", "head", "button",
    "select", "svg", "form"};

constexpr std::array<std::string_view, 5> kExcludedRoles = {"navigation", "contentinfo", "complementary",
                                                            "search", "banner"};

constexpr std::array<std::string_view, 20> kExcludedClasses = {
    "sphinxsidebar", "sphinxsidebarwrapper", "related",       "footer",        "headerlink",
    "toctree-wrapper", "rst-versions",      "wy-nav-side",   "wy-nav-top",    "rst-footer-buttons",
    "wy-breadcrumbs",  "breadcrumbs",       "bd-sidebar",    "bd-header",     "bd-footer",
    "prev-next-area",  "navbar",            "sidebar",       "clearer",       "viewcode-link"};

constexpr std::array<std::string_view, 34> kBlockTags = {
    "address", "article", "aside",  "blockquote", "body",   "caption", "dd",     "details", "dialog",
    "div",     "dl",      "dt",     "fieldset",   "figcaption", "figure", "footer", "h1",   "h2",
    "h3",      "h4",      "h5",     "h6",         "header", "hr",      "li",     "main",    "ol",
    "p",       "section", "table",  "td",         "th",     "tr",      "ul"};

template <std::size_t N>
bool contains(const std::array<std::string_view, N>& set, std::string_view v) {
  return std::find(set.begin(), set.end(), v) != set.end();
}

bool is_blank(std::string_view s) { return trim(s).empty(); }

struct Paragraph {
  std::string text;
  bool placeholder = false;
  std::vector<NodeId> nodes;
};

struct Segment {
  std::vector<std::string> heading_path;
  std::vector<Paragraph> paragraphs;
};

class SegmentBuilder {
 public:
  explicit SegmentBuilder(std::string page_title) {
    segments_.push_back(Segment{{std::move(page_title)}, {}});
  }

  void add_text(NodeId id, const std::string& text) {
    buffer_ += text;
    if (!is_blank(text)) buffer_nodes_.push_back(id);
  }

  void space() { buffer_ += ' '; }

  void break_paragraph() {
    auto text = collapse_whitespace(buffer_);
    if (!text.empty()) {
      segments_.back().paragraphs.push_back(Paragraph{std::move(text), false, std::move(buffer_nodes_)});
    }
    buffer_.clear();
    buffer_nodes_.clear();
  }

  void code_block() {
    break_paragraph();
    segments_.back().paragraphs.push_back(Paragraph{std::string(kCodePlaceholder), true, {}});
  }

  void heading(int level, std::string text) {
    break_paragraph();
    while (!stack_.empty() && stack_.back().first >= level) stack_.pop_back();
    stack_.emplace_back(level, std::move(text));
    Segment seg;
    for (const auto& [lvl, t] : stack_) seg.heading_path.push_back(t);
    segments_.push_back(std::move(seg));
  }

  std::vector<Segment> finish() {
    break_paragraph();
    return std::move(segments_);
  }

 private:
  std::vector<Segment> segments_;
  std::vector<std::pair<int, std::string>> stack_;
  std::string buffer_;
  std::vector<NodeId> buffer_nodes_;
};

// Visible text of a subtree, skipping excluded descendants.
std::string visible_text(const Document& doc, NodeId id) {
  std::string out;
  std::vector<NodeId> stack{id};
  while (!stack.empty()) {
    const auto cur = stack.back();
    stack.pop_back();
    const auto& node = doc.node(cur);
    if (node.kind == NodeKind::Text) {
      out += node.text;
      continue;
    }
    if (node.kind == NodeKind::Element && cur != id && is_excluded_element(doc, cur)) continue;
    for (auto it = node.children.rbegin(); it != node.children.rend(); ++it) stack.push_back(*it);
  }
  return out;
}

void walk(const Document& doc, NodeId root, SegmentBuilder& builder) {
  // Explicit stack: (node, entering?) pairs so closing a block can break paragraphs.
  std::vector<std::pair<NodeId, bool>> stack{{root, true}};
  while (!stack.empty()) {
    const auto [id, entering] = stack.back();
    stack.pop_back();
    const auto& node = doc.node(id);
    if (!entering) {
      builder.break_paragraph();
      continue;
    }
    switch (node.kind) {
      case NodeKind::Comment:
        continue;
      case NodeKind::Text:
        builder.add_text(id, node.text);
        continue;
      case NodeKind::Document:
      case NodeKind::Element:
        break;
    }
    if (node.kind == NodeKind::Element && id != root) {
      if (is_excluded_element(doc, id)) continue;
      if (is_code_block(doc, id)) {
        builder.code_block();
        continue;
      }
      if (const int level = html::heading_level(node.tag); level != 0) {
        auto text = collapse_whitespace(visible_text(doc, id));
        if (!text.empty()) {
          builder.heading(level, std::move(text));
          continue;
        }
      }
      if (node.tag == "br") {
        builder.space();
        continue;
      }
    }
    const bool block = node.kind == NodeKind::Element && contains(kBlockTags, node.tag);
    if (block) {
      builder.break_paragraph();
      stack.emplace_back(id, false);
    }
    for (auto it = node.children.rbegin(); it != node.children.rend(); ++it) stack.emplace_back(*it, true);
  }
}

std::string section_text(const Segment& seg) {
  std::string out;
  for (const auto& p : seg.paragraphs) {
    if (!out.empty()) out += "\n\n";
    out += p.text;
  }
  return out;
}

bool is_placeholder_piece(std::string_view s) { return trim(s) == kCodePlaceholder; }

}  // namespace

bool is_excluded_element(const Document& doc, NodeId id) {
  const auto& node = doc.node(id);
  if (node.kind != NodeKind::Element) return false;
  if (contains(kExcludedTags, node.tag)) return true;
  if (const auto* role = doc.attribute(id, "role"); role != nullptr && contains(kExcludedRoles, *role)) {
    return true;
  }
  if (doc.attribute(id, "hidden") != nullptr) return true;
  for (const auto cls : doc.classes(id)) {
    if (contains(kExcludedClasses, cls)) return true;
  }
  return false;
}

bool is_code_block(const Document& doc, NodeId id) {
  const auto& node = doc.node(id);
  if (node.kind != NodeKind::Element) return false;
  if (node.tag == "pre") return true;
  for (const auto cls : doc.classes(id)) {
    if (cls == "highlight" || cls.starts_with("highlight-") || cls == "highlighttable" ||
        cls == "doctest-block" || cls == "literal-block-wrapper") {
      return true;
    }
  }
  return false;
}

NodeId content_root(const Document& doc) {
  for (NodeId i = 0; i < doc.size(); ++i) {
    const auto& node = doc.node(i);
    if (node.kind != NodeKind::Element) continue;
    const auto* role = doc.attribute(i, "role");
    if ((role != nullptr && *role == "main") || node.tag == "main" ||
        (node.tag == "div" && doc.has_class(i, "body"))) {
      return i;
    }
  }
  const auto body = doc.find_first("body");
  return body == html::kNoNode ? doc.root() : body;
}

std::vector<TracedSection> extract_sections_traced(const Page& page, const Document& doc) {
  std::string title = collapse_whitespace(page.title);
  if (title.empty()) title = doc.title();
  if (title.empty()) title = page.path;

  SegmentBuilder builder(title);
  walk(doc, content_root(doc), builder);
  const auto segments = builder.finish();

  std::vector<TracedSection> out;
  for (const auto& seg : segments) {
    const bool has_prose = std::any_of(seg.paragraphs.begin(), seg.paragraphs.end(),
                                       [](const Paragraph& p) { return !p.placeholder; });
    if (!has_prose) continue;
    TracedSection traced;
    auto& section = traced.section;
    section.page_id = page.page_id;
    section.section_id = page.page_id + ":" + std::to_string(out.size());
    section.heading_path = seg.heading_path;
    section.text = section_text(seg);
    for (const auto& piece : split_sentences(section.text)) {
      if (is_placeholder_piece(piece)) continue;
      section.sentence_ids.push_back(make_sentence_id(piece));
    }
    if (section.sentence_ids.empty()) continue;
    for (const auto& p : seg.paragraphs) {
      traced.text_nodes.insert(traced.text_nodes.end(), p.nodes.begin(), p.nodes.end());
    }
    out.push_back(std::move(traced));
  }
  return out;
}

std::vector<Section> extract_sections(const Page& page) {
  const auto doc = html::parse(page.raw_html);
  std::vector<Section> out;
  for (auto& traced : extract_sections_traced(page, doc)) out.push_back(std::move(traced.section));
  return out;
}

std::vector<Sentence> section_sentences(const Section& section) {
  std::vector<Sentence> out;
  for (auto& piece : split_sentences(section.text)) {
    if (is_placeholder_piece(piece)) continue;
    Sentence s;
    s.sentence_id = make_sentence_id(piece);
    s.section_id = section.section_id;
    s.text = std::move(piece);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace docadopt::ingest
