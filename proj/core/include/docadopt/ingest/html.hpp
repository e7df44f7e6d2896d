#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace docadopt::ingest::html {

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

enum class NodeKind : std::uint8_t { Document, Element, Text, Comment };

struct Node {
  NodeKind kind = NodeKind::Element;
  std::string tag;  // lowercase, elements only
  std::vector<std::pair<std::string, std::string>> attributes;
  std::string text;  // text and comment nodes, entities decoded
  NodeId parent = kNoNode;
  std::vector<NodeId> children;
};

/// Arena-backed DOM produced by parse(). Node ids are dense and assigned in
/// document order, so identical input bytes always yield identical ids.
class Document {
 public:
  NodeId root() const { return 0; }
  std::size_t size() const { return nodes_.size(); }
  const Node& node(NodeId id) const { return nodes_.at(id); }

  const std::string* attribute(NodeId id, std::string_view name) const;
  bool has_class(NodeId id, std::string_view cls) const;
  std::vector<std::string_view> classes(NodeId id) const;

  /// Concatenated descendant text, unnormalized.
  std::string text_content(NodeId id) const;

  /// First element (document order) with the given tag, or kNoNode.
  NodeId find_first(std::string_view tag) const;

  /// Contents of <title>, whitespace-collapsed.
  std::string title() const;

 private:
  friend Document parse(std::string_view html);
  std::vector<Node> nodes_;
};

/// Tolerant parse: unknown or unbalanced markup is repaired, never rejected.
Document parse(std::string_view html);

/// Decode named (common subset) and numeric character references.
std::string decode_entities(std::string_view text);

bool is_void_element(std::string_view tag);
bool is_heading(std::string_view tag);
int heading_level(std::string_view tag);  // 0 when not h1..h6

}  // namespace docadopt::ingest::html
