#include "docadopt_testkit/coverage.hpp"

#include <map>
#include <set>

#include "docadopt/text.hpp"

namespace docadopt::testkit {

using ingest::html::Document;
using ingest::html::NodeId;
using ingest::html::NodeKind;

std::vector<NodeId> prose_text_nodes(const Document& doc) {
  const NodeId root = ingest::content_root(doc);
  std::vector<NodeId> out;
  for (NodeId id = 0; id < doc.size(); ++id) {
    const auto& node = doc.node(id);
    if (node.kind != NodeKind::Text || trim(node.text).empty()) continue;
    bool under_root = false;
    bool hidden = false;
    for (NodeId cur = node.parent; cur != ingest::html::kNoNode; cur = doc.node(cur).parent) {
      if (cur == root) {
        under_root = true;
        break;
      }
      if (ingest::is_excluded_element(doc, cur) || ingest::is_code_block(doc, cur) ||
          ingest::html::is_heading(doc.node(cur).tag)) {
        hidden = true;
      }
    }
    if (root == doc.root()) under_root = true;
    if (under_root && !hidden) out.push_back(id);
  }
  return out;
}

std::vector<std::string> check_partition(const Document& doc, const std::vector<ingest::TracedSection>& sections) {
  std::vector<std::string> problems;
  std::map<NodeId, std::size_t> claims;
  for (const auto& s : sections) {
    for (const auto id : s.text_nodes) ++claims[id];
  }
  const auto prose = prose_text_nodes(doc);
  const std::set<NodeId> expected(prose.begin(), prose.end());
  for (const auto id : prose) {
    const auto it = claims.find(id);
    const auto n = it == claims.end() ? 0 : it->second;
    if (n != 1) {
      problems.push_back("text node " + std::to_string(id) + " claimed " + std::to_string(n) + " times: \"" +
                         collapse_whitespace(doc.node(id).text) + "\"");
    }
  }
  for (const auto& [id, n] : claims) {
    if (!expected.contains(id)) {
      problems.push_back("section claims non-prose node " + std::to_string(id) + ": \"" +
                         collapse_whitespace(doc.node(id).text) + "\"");
    }
  }
  return problems;
}

}  // namespace docadopt::testkit
