#include "docadopt/mentor/mentor.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <spdlog/spdlog.h>

#include "docadopt/errors.hpp"
#include "docadopt/mentor/prompts.hpp"
#include "docadopt/text.hpp"

namespace docadopt::mentor {

using nlohmann::json;

namespace {

constexpr int kAugmentationSchemaVersion = 1;

std::vector<std::string> term_strings(const std::vector<TechnicalTerm>& terms) {
  std::vector<std::string> out;
  for (const auto& t : terms) out.push_back(t.term);
  return out;
}

PromptLogEntry new_entry(std::string step, std::string_view version, const LlmProvider& llm, std::string prompt) {
  PromptLogEntry e;
  e.step = std::move(step);
  e.template_version = std::string(version);
  e.model_id = llm.model_id();
  e.prompt = std::move(prompt);
  return e;
}

/// Runs the provider, recording either the reply or the error. Never throws.
std::optional<std::string> call(LlmProvider& llm, PromptLogEntry& entry) {
  try {
    entry.response = llm.complete(entry.prompt);
    return entry.response;
  } catch (const std::exception& e) {
    entry.error = e.what();
  } catch (...) {
    entry.error = "unknown provider failure";
  }
  spdlog::warn("mentor: {} call failed: {}", entry.step, *entry.error);
  return std::nullopt;
}

}  // namespace

std::string_view to_string(TermSource s) { return s == TermSource::Tfidf ? "tfidf" : "llm"; }

std::vector<TechnicalTerm> detect(const std::string& paragraph, const std::string& oss_domain,
                                  const corpus::DomainIndex& index, std::size_t k) {
  std::vector<TechnicalTerm> out;
  for (auto& [term, score] : corpus::top_terms(paragraph, oss_domain, index, k)) {
    out.push_back(TechnicalTerm{std::move(term), TermSource::Tfidf, score, "", std::nullopt, std::nullopt});
  }
  return out;
}

ExpandResult expand(const std::string& paragraph, const std::string& oss_domain,
                    const std::vector<TechnicalTerm>& detected, LlmProvider& llm) {
  ExpandResult result;
  result.terms = detected;
  std::stable_sort(result.terms.begin(), result.terms.end(),
                   [](const auto& a, const auto& b) { return a.score > b.score; });

  auto entry = new_entry("expand", kExpandPromptVersion, llm,
                         render_prompt(expand_template(), oss_domain, term_strings(result.terms), paragraph));
  const auto reply = call(llm, entry);
  result.log = entry;
  if (!reply) {
    result.degraded = true;
    result.issue = "expand: provider failed: " + *entry.error;
    return result;
  }

  std::vector<std::string> proposed;
  try {
    proposed = parse_expand_reply(*reply);
  } catch (const FormatError& e) {
    result.degraded = true;
    result.issue = std::string("expand: ") + e.what();
    return result;
  }

  std::set<std::string> seen;
  for (const auto& t : result.terms) seen.insert(to_lower(t.term));
  for (auto& term : proposed) {
    if (!contains_on_token_boundary(paragraph, term)) {
      spdlog::debug("mentor: dropped '{}', not in paragraph", term);
      continue;
    }
    if (!seen.insert(to_lower(term)).second) continue;
    result.terms.push_back(TechnicalTerm{std::move(term), TermSource::Llm, 0.0, "", std::nullopt, std::nullopt});
  }
  return result;
}

Augmentation explain(const std::string& paragraph, const std::string& oss_domain, std::vector<TechnicalTerm> terms,
                     LlmProvider& llm) {
  if (terms.empty()) throw InvalidArgument("explain needs at least one term");
  Augmentation out;
  out.paragraph = paragraph;
  out.oss_domain = oss_domain;

  auto entry = new_entry("explain", kExplainPromptVersion, llm,
                         render_prompt(explain_template(), oss_domain, term_strings(terms), paragraph));
  const auto reply = call(llm, entry);
  out.prompt_log.push_back(entry);

  std::map<std::string, ExplainBlock> blocks;
  if (reply) {
    for (auto& b : parse_explain_reply(*reply)) blocks.try_emplace(to_lower(b.term), std::move(b));
  } else {
    out.degraded = true;
    out.issues.push_back("explain: provider failed: " + *entry.error);
  }

  for (auto& t : terms) {
    const auto it = blocks.find(to_lower(t.term));
    if (it == blocks.end()) {
      t.explanation = std::string(kUnavailable);
      t.examples.reset();
      t.references.reset();
      if (reply) {
        out.degraded = true;
        out.issues.push_back("explain: no usable reply block for '" + t.term + "'");
      }
      continue;
    }
    t.explanation = it->second.explanation;
    if (it->second.has_examples && !it->second.examples.empty()) t.examples = it->second.examples;
    if (it->second.has_references && !it->second.references.empty()) t.references = it->second.references;
  }
  out.terms = std::move(terms);
  return out;
}

Augmentation augment(const std::string& paragraph, const std::string& oss_domain, const corpus::DomainIndex& index,
                     LlmProvider& llm, std::size_t k) {
  const auto detected = detect(paragraph, oss_domain, index, k);
  auto expanded = expand(paragraph, oss_domain, detected, llm);

  Augmentation out;
  if (expanded.terms.empty()) {
    out.paragraph = paragraph;
    out.oss_domain = oss_domain;
  } else {
    out = explain(paragraph, oss_domain, std::move(expanded.terms), llm);
  }
  if (expanded.log) out.prompt_log.insert(out.prompt_log.begin(), *expanded.log);
  if (expanded.degraded) {
    out.degraded = true;
    out.issues.insert(out.issues.begin(), expanded.issue);
  }
  return out;
}

ReplayLlm replay_provider(const Augmentation& augmentation) {
  std::map<std::string, ReplayLlm::Entry> by_prompt;
  std::string model_id;
  for (const auto& e : augmentation.prompt_log) {
    by_prompt[e.prompt] = ReplayLlm::Entry{e.response, e.error};
    model_id = e.model_id;
  }
  return ReplayLlm(model_id, std::move(by_prompt));
}

json to_json(const Augmentation& a) {
  json terms = json::array();
  for (const auto& t : a.terms) {
    json jt{{"term", t.term}, {"source", to_string(t.source)}, {"score", t.score}, {"explanation", t.explanation}};
    if (t.examples) jt["examples"] = *t.examples;
    if (t.references) jt["references"] = *t.references;
    terms.push_back(std::move(jt));
  }
  json log = json::array();
  for (const auto& e : a.prompt_log) {
    log.push_back({{"step", e.step},
                   {"template_version", e.template_version},
                   {"model_id", e.model_id},
                   {"prompt", e.prompt},
                   {"response", e.response ? json(*e.response) : json(nullptr)},
                   {"error", e.error ? json(*e.error) : json(nullptr)}});
  }
  return json{{"schema_version", kAugmentationSchemaVersion},
              {"paragraph", a.paragraph},
              {"oss_domain", a.oss_domain},
              {"terms", terms},
              {"prompt_log", log},
              {"degraded", a.degraded},
              {"issues", a.issues}};
}

Augmentation augmentation_from_json(const json& j) {
  const int version = j.at("schema_version").get<int>();
  if (version != kAugmentationSchemaVersion) throw VersionError("augmentation", version, kAugmentationSchemaVersion);
  Augmentation a;
  j.at("paragraph").get_to(a.paragraph);
  j.at("oss_domain").get_to(a.oss_domain);
  for (const auto& jt : j.at("terms")) {
    TechnicalTerm t;
    jt.at("term").get_to(t.term);
    const auto source = jt.at("source").get<std::string>();
    if (source != "tfidf" && source != "llm") throw FormatError("unknown term source '" + source + "'");
    t.source = source == "tfidf" ? TermSource::Tfidf : TermSource::Llm;
    jt.at("score").get_to(t.score);
    jt.at("explanation").get_to(t.explanation);
    if (jt.contains("examples")) t.examples = jt.at("examples").get<std::vector<std::string>>();
    if (jt.contains("references")) t.references = jt.at("references").get<std::vector<std::string>>();
    a.terms.push_back(std::move(t));
  }
  for (const auto& je : j.at("prompt_log")) {
    PromptLogEntry e;
    je.at("step").get_to(e.step);
    je.at("template_version").get_to(e.template_version);
    je.at("model_id").get_to(e.model_id);
    je.at("prompt").get_to(e.prompt);
    if (!je.at("response").is_null()) e.response = je.at("response").get<std::string>();
    if (!je.at("error").is_null()) e.error = je.at("error").get<std::string>();
    a.prompt_log.push_back(std::move(e));
  }
  j.at("degraded").get_to(a.degraded);
  j.at("issues").get_to(a.issues);
  return a;
}

}  // namespace docadopt::mentor
