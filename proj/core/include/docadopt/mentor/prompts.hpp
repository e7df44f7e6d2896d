#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace docadopt::mentor {

inline constexpr std::string_view kExpandPromptVersion = "expand.v1";
inline constexpr std::string_view kExplainPromptVersion = "explain.v1";

std::string_view expand_template();
std::string_view explain_template();

/// Replaces {{domain}}, {{terms}} and {{paragraph}}. Terms render as "- term"
/// lines, or "(none)" when empty.
std::string render_prompt(std::string_view tmpl, const std::string& domain, const std::vector<std::string>& terms,
                          const std::string& paragraph);

/// Inverse helpers used by the stub provider.
std::string prompt_kind(const std::string& prompt);  // "expand", "explain" or ""
std::string prompt_paragraph(const std::string& prompt);
std::string prompt_domain(const std::string& prompt);
std::vector<std::string> prompt_list(const std::string& prompt, std::string_view heading);

struct ExplainBlock {
  std::string term;
  std::string explanation;
  std::vector<std::string> examples;
  std::vector<std::string> references;
  bool has_examples = false;
  bool has_references = false;
};

/// Throws FormatError when the reply has no "TERMS:" line.
std::vector<std::string> parse_expand_reply(const std::string& reply);

/// Complete blocks only (TERM, non-empty EXPLANATION, END); anything else is skipped.
std::vector<ExplainBlock> parse_explain_reply(const std::string& reply);

}  // namespace docadopt::mentor
