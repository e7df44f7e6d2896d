#include "docadopt/ingest/html.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>

#include "docadopt/text.hpp"

namespace docadopt::ingest::html {

namespace {

struct Entity {
  std::string_view name;
  std::string_view utf8;
};

constexpr std::array<Entity, 31> kEntities = {{
    {"amp", "&"},           {"apos", "'"},          {"bull", "\xE2\x80\xA2"},
    {"copy", "\xC2\xA9"},   {"gt", ">"},            {"hellip", "\xE2\x80\xA6"},
    {"laquo", "\xC2\xAB"},  {"larr", "\xE2\x86\x90"}, {"ldquo", "\xE2\x80\x9C"},
    {"lsaquo", "\xE2\x80\xB9"}, {"lsquo", "\xE2\x80\x98"}, {"lt", "<"},
    {"mdash", "\xE2\x80\x94"}, {"middot", "\xC2\xB7"}, {"nbsp", "\xC2\xA0"},
    {"ndash", "\xE2\x80\x93"}, {"para", "\xC2\xB6"},   {"quot", "\""},
    {"raquo", "\xC2\xBB"},  {"rarr", "\xE2\x86\x92"}, {"rdquo", "\xE2\x80\x9D"},
    {"reg", "\xC2\xAE"},    {"rsaquo", "\xE2\x80\xBA"}, {"rsquo", "\xE2\x80\x99"},
    {"sect", "\xC2\xA7"},   {"shy", ""},            {"thinsp", "\xE2\x80\x89"},
    {"times", "\xC3\x97"},  {"trade", "\xE2\x84\xA2"}, {"zwj", "\xE2\x80\x8D"},
    {"zwnj", "\xE2\x80\x8C"},
}};

void append_codepoint(std::string& out, std::uint32_t cp) {
  if (cp == 0 || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) cp = 0xFFFD;
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

bool starts_with_icase(std::string_view s, std::size_t pos, std::string_view prefix) {
  if (s.size() - pos < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(s[pos + i])) != prefix[i]) return false;
  }
  return true;
}

bool is_name_char(char c) {
  const auto u = static_cast<unsigned char>(c);
  return std::isalnum(u) || c == '-' || c == '_' || c == ':' || c == '.';
}

bool is_ws(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f'; }

std::string lower_ascii(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

template <std::size_t N>
bool in_set(std::string_view tag, const std::array<std::string_view, N>& set) {
  return std::find(set.begin(), set.end(), tag) != set.end();
}

constexpr std::array<std::string_view, 14> kVoid = {"area", "base", "br",   "col",   "embed",
                                                    "hr",   "img",  "input", "link", "meta",
                                                    "param", "source", "track", "wbr"};

// Start tags that implicitly close an open <p>.
constexpr std::array<std::string_view, 30> kClosesP = {
    "address", "article", "aside",  "blockquote", "details", "dialog", "div",    "dl",
    "fieldset", "figcaption", "figure", "footer", "form",   "h1",      "h2",     "h3",
    "h4",      "h5",     "h6",     "header",     "hr",      "main",    "nav",    "ol",
    "p",       "pre",    "section", "table",     "ul",      "menu"};

constexpr std::array<std::string_view, 10> kPScope = {"html",   "table",    "td",   "th",
                                                      "caption", "button",  "object", "template",
                                                      "marquee", "applet"};

class TreeBuilder {
 public:
  explicit TreeBuilder(std::vector<Node>& nodes) : nodes_(nodes) {
    nodes_.push_back(Node{NodeKind::Document, {}, {}, {}, kNoNode, {}});
    stack_.push_back(0);
  }

  void text(std::string decoded) {
    if (decoded.empty()) return;
    const NodeId parent = stack_.back();
    auto& kids = nodes_[parent].children;
    if (!kids.empty() && nodes_[kids.back()].kind == NodeKind::Text) {
      nodes_[kids.back()].text += decoded;
      return;
    }
    append(Node{NodeKind::Text, {}, {}, std::move(decoded), parent, {}});
  }

  void comment(std::string body) {
    append(Node{NodeKind::Comment, {}, {}, std::move(body), stack_.back(), {}});
  }

  void start(std::string tag, std::vector<std::pair<std::string, std::string>> attrs) {
    implicit_close(tag);
    const NodeId id = append(Node{NodeKind::Element, tag, std::move(attrs), {}, stack_.back(), {}});
    if (!is_void_element(tag)) stack_.push_back(id);
  }

  void end(std::string_view tag) {
    for (std::size_t i = stack_.size(); i-- > 1;) {
      if (nodes_[stack_[i]].tag == tag) {
        stack_.resize(i);
        return;
      }
    }
    // Unmatched end tag: ignored.
  }

 private:
  NodeId append(Node node) {
    const auto id = static_cast<NodeId>(nodes_.size());
    const NodeId parent = node.parent;
    nodes_.push_back(std::move(node));
    nodes_[parent].children.push_back(id);
    return id;
  }

  const std::string& current_tag() const { return nodes_[stack_.back()].tag; }

  // Pop up to and including the nearest `targets` element, unless a `stoppers`
  // element is hit first.
  template <std::size_t A, std::size_t B>
  void close_nearest(const std::array<std::string_view, A>& targets,
                     const std::array<std::string_view, B>& stoppers) {
    for (std::size_t i = stack_.size(); i-- > 1;) {
      const auto& t = nodes_[stack_[i]].tag;
      if (in_set(t, targets)) {
        stack_.resize(i);
        return;
      }
      if (in_set(t, stoppers)) return;
    }
  }

  void implicit_close(const std::string& tag) {
    static constexpr std::array<std::string_view, 1> kP = {"p"};
    static constexpr std::array<std::string_view, 1> kLi = {"li"};
    static constexpr std::array<std::string_view, 3> kListScope = {"ul", "ol", "menu"};
    static constexpr std::array<std::string_view, 2> kDtDd = {"dt", "dd"};
    static constexpr std::array<std::string_view, 1> kDl = {"dl"};
    static constexpr std::array<std::string_view, 1> kTr = {"tr"};
    static constexpr std::array<std::string_view, 4> kRowScope = {"table", "tbody", "thead", "tfoot"};
    static constexpr std::array<std::string_view, 2> kCell = {"td", "th"};
    static constexpr std::array<std::string_view, 2> kCellScope = {"tr", "table"};
    static constexpr std::array<std::string_view, 3> kSection = {"tbody", "thead", "tfoot"};
    static constexpr std::array<std::string_view, 1> kTable = {"table"};
    static constexpr std::array<std::string_view, 1> kOption = {"option"};
    static constexpr std::array<std::string_view, 1> kSelect = {"select"};

    if (in_set(tag, kClosesP)) close_nearest(kP, kPScope);
    if (tag == "li") close_nearest(kLi, kListScope);
    if (tag == "dt" || tag == "dd") close_nearest(kDtDd, kDl);
    if (tag == "tr") close_nearest(kTr, kRowScope);
    if (tag == "td" || tag == "th") close_nearest(kCell, kCellScope);
    if (tag == "tbody" || tag == "thead" || tag == "tfoot") close_nearest(kSection, kTable);
    if (tag == "option") close_nearest(kOption, kSelect);
    if (is_heading(tag) && is_heading(current_tag())) stack_.pop_back();
  }

  std::vector<Node>& nodes_;
  std::vector<NodeId> stack_;
};

// Parses attributes starting at `pos` (just after the tag name); returns the
// position after '>' and whether the tag was self-closed.
std::size_t parse_attributes(std::string_view s, std::size_t pos,
                             std::vector<std::pair<std::string, std::string>>& attrs) {
  const auto n = s.size();
  while (pos < n) {
    while (pos < n && (is_ws(s[pos]) || s[pos] == '/')) ++pos;
    if (pos >= n) break;
    if (s[pos] == '>') return pos + 1;
    const auto name_start = pos;
    while (pos < n && !is_ws(s[pos]) && s[pos] != '>' && s[pos] != '=' &&
           !(s[pos] == '/' && pos + 1 < n && s[pos + 1] == '>')) {
      ++pos;
    }
    std::string name = lower_ascii(s.substr(name_start, pos - name_start));
    while (pos < n && is_ws(s[pos])) ++pos;
    std::string value;
    if (pos < n && s[pos] == '=') {
      ++pos;
      while (pos < n && is_ws(s[pos])) ++pos;
      if (pos < n && (s[pos] == '"' || s[pos] == '\'')) {
        const char quote = s[pos++];
        const auto close = s.find(quote, pos);
        const auto end = close == std::string_view::npos ? n : close;
        value = decode_entities(s.substr(pos, end - pos));
        pos = close == std::string_view::npos ? n : close + 1;
      } else {
        const auto vstart = pos;
        while (pos < n && !is_ws(s[pos]) && s[pos] != '>') ++pos;
        value = decode_entities(s.substr(vstart, pos - vstart));
      }
    }
    if (!name.empty() &&
        std::none_of(attrs.begin(), attrs.end(), [&](const auto& a) { return a.first == name; })) {
      attrs.emplace_back(std::move(name), std::move(value));
    }
  }
  return n;
}

}  // namespace

bool is_void_element(std::string_view tag) { return in_set(tag, kVoid); }

int heading_level(std::string_view tag) {
  if (tag.size() == 2 && tag[0] == 'h' && tag[1] >= '1' && tag[1] <= '6') return tag[1] - '0';
  return 0;
}

bool is_heading(std::string_view tag) { return heading_level(tag) != 0; }

std::string decode_entities(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c != '&') {
      out.push_back(c);
      ++i;
      continue;
    }
    const auto semi = text.find(';', i + 1);
    if (semi == std::string_view::npos || semi - i > 12) {
      out.push_back(c);
      ++i;
      continue;
    }
    const auto ref = text.substr(i + 1, semi - i - 1);
    bool decoded = false;
    if (ref.size() > 1 && ref[0] == '#') {
      std::uint32_t cp = 0;
      const bool hex = ref[1] == 'x' || ref[1] == 'X';
      const auto digits = ref.substr(hex ? 2 : 1);
      const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), cp, hex ? 16 : 10);
      if (ec == std::errc{} && ptr == digits.data() + digits.size() && !digits.empty()) {
        append_codepoint(out, cp);
        decoded = true;
      }
    } else {
      const auto it = std::find_if(kEntities.begin(), kEntities.end(),
                                   [&](const Entity& e) { return e.name == ref; });
      if (it != kEntities.end()) {
        out.append(it->utf8);
        decoded = true;
      }
    }
    if (decoded) {
      i = semi + 1;
    } else {
      out.push_back(c);
      ++i;
    }
  }
  return out;
}

Document parse(std::string_view s) {
  Document doc;
  TreeBuilder builder(doc.nodes_);
  const auto n = s.size();
  std::size_t pos = 0;
  std::size_t text_start = 0;

  auto flush_text = [&](std::size_t end) {
    if (end > text_start) builder.text(decode_entities(s.substr(text_start, end - text_start)));
  };

  while (pos < n) {
    if (s[pos] != '<' || pos + 1 >= n) {
      ++pos;
      continue;
    }
    const char next = s[pos + 1];
    if (s.compare(pos, 4, "<!--") == 0) {
      flush_text(pos);
      const auto close = s.find("-->", pos + 4);
      const auto end = close == std::string_view::npos ? n : close;
      builder.comment(std::string(s.substr(pos + 4, end - pos - 4)));
      pos = close == std::string_view::npos ? n : close + 3;
      text_start = pos;
    } else if (next == '!' || next == '?') {
      flush_text(pos);
      const auto close = s.find('>', pos);
      pos = close == std::string_view::npos ? n : close + 1;
      text_start = pos;
    } else if (next == '/' && pos + 2 < n && std::isalpha(static_cast<unsigned char>(s[pos + 2]))) {
      flush_text(pos);
      auto p = pos + 2;
      const auto name_start = p;
      while (p < n && is_name_char(s[p])) ++p;
      const auto tag = lower_ascii(s.substr(name_start, p - name_start));
      const auto close = s.find('>', p);
      pos = close == std::string_view::npos ? n : close + 1;
      text_start = pos;
      builder.end(tag);
    } else if (std::isalpha(static_cast<unsigned char>(next))) {
      flush_text(pos);
      auto p = pos + 1;
      const auto name_start = p;
      while (p < n && is_name_char(s[p])) ++p;
      auto tag = lower_ascii(s.substr(name_start, p - name_start));
      std::vector<std::pair<std::string, std::string>> attrs;
      pos = parse_attributes(s, p, attrs);
      text_start = pos;
      const bool raw = tag == "script" || tag == "style" || tag == "textarea" || tag == "title";
      builder.start(tag, std::move(attrs));
      if (raw) {
        // Raw text runs to the matching end tag, whatever it contains.
        auto search = pos;
        std::size_t close = n;
        while (true) {
          close = s.find("</", search);
          if (close == std::string_view::npos) {
            close = n;
            break;
          }
          if (starts_with_icase(s, close + 2, tag)) break;
          search = close + 2;
        }
        const auto body = s.substr(pos, close - pos);
        builder.text(tag == "title" || tag == "textarea" ? decode_entities(body) : std::string(body));
        builder.end(tag);
        const auto gt = close == n ? std::string_view::npos : s.find('>', close);
        pos = gt == std::string_view::npos ? n : gt + 1;
        text_start = pos;
      }
    } else {
      ++pos;
    }
  }
  flush_text(n);
  return doc;
}

const std::string* Document::attribute(NodeId id, std::string_view name) const {
  for (const auto& [key, value] : nodes_.at(id).attributes) {
    if (key == name) return &value;
  }
  return nullptr;
}

std::vector<std::string_view> Document::classes(NodeId id) const {
  std::vector<std::string_view> out;
  const auto* cls = attribute(id, "class");
  if (cls == nullptr) return out;
  std::string_view rest = *cls;
  while (!rest.empty()) {
    const auto start = rest.find_first_not_of(" \t\n\r\f");
    if (start == std::string_view::npos) break;
    rest = rest.substr(start);
    const auto end = rest.find_first_of(" \t\n\r\f");
    out.push_back(rest.substr(0, end));
    if (end == std::string_view::npos) break;
    rest = rest.substr(end);
  }
  return out;
}

bool Document::has_class(NodeId id, std::string_view cls) const {
  const auto all = classes(id);
  return std::find(all.begin(), all.end(), cls) != all.end();
}

std::string Document::text_content(NodeId id) const {
  std::string out;
  std::vector<NodeId> stack{id};
  while (!stack.empty()) {
    const auto cur = stack.back();
    stack.pop_back();
    const auto& node = nodes_.at(cur);
    if (node.kind == NodeKind::Text) out += node.text;
    for (auto it = node.children.rbegin(); it != node.children.rend(); ++it) stack.push_back(*it);
  }
  return out;
}

NodeId Document::find_first(std::string_view tag) const {
  for (NodeId i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].kind == NodeKind::Element && nodes_[i].tag == tag) return i;
  }
  return kNoNode;
}

std::string Document::title() const {
  const auto t = find_first("title");
  return t == kNoNode ? std::string{} : collapse_whitespace(text_content(t));
}

}  // namespace docadopt::ingest::html
