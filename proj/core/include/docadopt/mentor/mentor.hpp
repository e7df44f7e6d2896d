#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "docadopt/corpus/index.hpp"
#include "docadopt/mentor/llm.hpp"

namespace docadopt::mentor {

inline constexpr std::size_t kDefaultDetectCount = 5;
inline constexpr std::string_view kUnavailable = "unavailable";

enum class TermSource { Tfidf, Llm };

std::string_view to_string(TermSource s);

struct TechnicalTerm {
  std::string term;
  TermSource source = TermSource::Tfidf;
  double score = 0.0;
  std::string explanation;
  std::optional<std::vector<std::string>> examples;
  std::optional<std::vector<std::string>> references;

  bool operator==(const TechnicalTerm&) const = default;
};

struct PromptLogEntry {
  std::string step;  // expand | explain
  std::string template_version;
  std::string model_id;
  std::string prompt;
  std::optional<std::string> response;
  std::optional<std::string> error;

  bool operator==(const PromptLogEntry&) const = default;
};

struct Augmentation {
  std::string paragraph;
  std::string oss_domain;
  std::vector<TechnicalTerm> terms;
  std::vector<PromptLogEntry> prompt_log;
  bool degraded = false;
  std::vector<std::string> issues;

  bool operator==(const Augmentation&) const = default;
};

/// Highest tech_score terms of the paragraph wrapped as tfidf terms with empty
/// explanations. Throws NotFound for a domain missing from the index.
std::vector<TechnicalTerm> detect(const std::string& paragraph, const std::string& oss_domain,
                                  const corpus::DomainIndex& index, std::size_t k = kDefaultDetectCount);

struct ExpandResult {
  std::vector<TechnicalTerm> terms;
  std::optional<PromptLogEntry> log;
  bool degraded = false;
  std::string issue;
};

/// Detected terms (by score) followed by llm-proposed terms that occur in the
/// paragraph and are new, in reply order. Never throws on provider failure.
ExpandResult expand(const std::string& paragraph, const std::string& oss_domain,
                    const std::vector<TechnicalTerm>& detected, LlmProvider& llm);

/// Fills explanations, examples and references from one structured reply.
/// Terms the reply does not cover get "unavailable" and mark the result degraded.
/// Throws InvalidArgument for an empty term list.
Augmentation explain(const std::string& paragraph, const std::string& oss_domain, std::vector<TechnicalTerm> terms,
                     LlmProvider& llm);

/// detect, expand, explain. An empty term list skips the explain call.
Augmentation augment(const std::string& paragraph, const std::string& oss_domain, const corpus::DomainIndex& index,
                     LlmProvider& llm, std::size_t k = kDefaultDetectCount);

/// A provider that answers from the log of a previous augmentation.
ReplayLlm replay_provider(const Augmentation& augmentation);

nlohmann::json to_json(const Augmentation& a);
Augmentation augmentation_from_json(const nlohmann::json& j);

}  // namespace docadopt::mentor
