#include "docadopt/mentor/prompts.hpp"

#include <optional>
#include <sstream>

#include "docadopt/errors.hpp"
#include "docadopt/text.hpp"

namespace docadopt::mentor {

namespace {

#include "docadopt_prompts.inc"

void replace_all(std::string& s, std::string_view from, const std::string& to) {
  for (std::size_t pos = s.find(from); pos != std::string::npos; pos = s.find(from, pos + to.size())) {
    s.replace(pos, from.size(), to);
  }
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    out.push_back(line);
  }
  return out;
}

bool starts_with_key(std::string_view line, std::string_view key) {
  return line.substr(0, key.size()) == key;
}

std::string after_key(std::string_view line, std::string_view key) {
  return std::string(trim(line.substr(key.size())));
}

}  // namespace

std::string_view expand_template() { return kExpandTemplateText; }
std::string_view explain_template() { return kExplainTemplateText; }

std::string render_prompt(std::string_view tmpl, const std::string& domain, const std::vector<std::string>& terms,
                          const std::string& paragraph) {
  std::string list;
  for (const auto& t : terms) list += "- " + t + "\n";
  if (list.empty()) list = "(none)\n";
  list.pop_back();
  std::string out(tmpl);
  replace_all(out, "{{domain}}", domain);
  replace_all(out, "{{terms}}", list);
  // Paragraph last so its own text is never treated as a placeholder.
  replace_all(out, "{{paragraph}}", paragraph);
  return out;
}

std::string prompt_kind(const std::string& prompt) {
  if (starts_with_key(prompt, "# prompt: expand")) return "expand";
  if (starts_with_key(prompt, "# prompt: explain")) return "explain";
  return "";
}

std::string prompt_paragraph(const std::string& prompt) {
  const auto open = prompt.rfind("PARAGRAPH:\n<<<\n");
  if (open == std::string::npos) return "";
  const auto begin = open + std::string_view("PARAGRAPH:\n<<<\n").size();
  const auto end = prompt.rfind("\n>>>");
  if (end == std::string::npos || end < begin) return "";
  return prompt.substr(begin, end - begin);
}

std::string prompt_domain(const std::string& prompt) {
  static constexpr std::string_view marker = "project in the ";
  const auto pos = prompt.find(marker);
  if (pos == std::string::npos) return "";
  const auto begin = pos + marker.size();
  const auto end = prompt.find(" domain.", begin);
  return end == std::string::npos ? "" : prompt.substr(begin, end - begin);
}

std::vector<std::string> prompt_list(const std::string& prompt, std::string_view heading) {
  // Only look before the paragraph so paragraph text cannot inject list items.
  const auto para = prompt.rfind("PARAGRAPH:\n<<<\n");
  const auto head = prompt.substr(0, para);
  const auto lines = lines_of(head);
  std::vector<std::string> out;
  bool in_list = false;
  for (const auto& line : lines) {
    if (line == heading) {
      in_list = true;
      out.clear();
      continue;
    }
    if (!in_list) continue;
    if (starts_with_key(line, "- ")) {
      out.push_back(after_key(line, "- "));
    } else if (line != "(none)") {
      in_list = false;
    }
  }
  return out;
}

std::vector<std::string> parse_expand_reply(const std::string& reply) {
  const auto lines = lines_of(reply);
  std::size_t i = 0;
  while (i < lines.size() && trim(lines[i]) != "TERMS:") ++i;
  if (i == lines.size()) throw FormatError("expand reply has no TERMS: line");
  std::vector<std::string> out;
  for (++i; i < lines.size(); ++i) {
    const auto line = trim(lines[i]);
    if (line.empty()) continue;
    if (line.substr(0, 2) != "- ") break;
    auto term = std::string(trim(line.substr(2)));
    if (!term.empty()) out.push_back(std::move(term));
  }
  return out;
}

std::vector<ExplainBlock> parse_explain_reply(const std::string& reply) {
  enum class Field { None, Explanation, Examples, References };
  std::vector<ExplainBlock> out;
  std::optional<ExplainBlock> current;
  Field field = Field::None;
  for (const auto& raw : lines_of(reply)) {
    const std::string line(trim(raw));
    if (starts_with_key(line, "TERM:")) {
      current = ExplainBlock{};
      current->term = after_key(line, "TERM:");
      field = Field::None;
    } else if (!current) {
      continue;
    } else if (line == "END") {
      if (!current->term.empty() && !current->explanation.empty()) out.push_back(std::move(*current));
      current.reset();
      field = Field::None;
    } else if (starts_with_key(line, "EXPLANATION:")) {
      current->explanation = after_key(line, "EXPLANATION:");
      field = Field::Explanation;
    } else if (line == "EXAMPLES:") {
      current->has_examples = true;
      field = Field::Examples;
    } else if (line == "REFERENCES:") {
      current->has_references = true;
      field = Field::References;
    } else if (line.empty()) {
      continue;
    } else if (field == Field::Examples && starts_with_key(line, "- ")) {
      current->examples.push_back(after_key(line, "- "));
    } else if (field == Field::References && starts_with_key(line, "- ")) {
      current->references.push_back(after_key(line, "- "));
    } else if (field == Field::Explanation) {
      current->explanation += " " + line;
    }
  }
  return out;
}

}  // namespace docadopt::mentor
