#include "docadopt/service/service.hpp"

#include <algorithm>

#include <spdlog/spdlog.h>

#include "docadopt/errors.hpp"
#include "docadopt/mentor/mentor.hpp"
#include "docadopt/text.hpp"

namespace docadopt::service {

using nlohmann::json;

namespace {

ApiResponse error(int status, std::string message, std::string field = "") {
  json body{{"error", std::move(message)}};
  if (!field.empty()) body["field"] = std::move(field);
  return {status, std::move(body)};
}

/// Parses a JSON object body and pulls one required non-empty string field.
std::optional<ApiResponse> require_string(const std::string& body, const char* field, json& parsed, std::string& out) {
  try {
    parsed = json::parse(body);
  } catch (const json::parse_error&) {
    return error(400, "body is not valid JSON");
  }
  if (!parsed.is_object()) return error(400, "body must be a JSON object");
  if (!parsed.contains(field)) return error(400, std::string("missing field '") + field + "'", field);
  if (!parsed.at(field).is_string()) return error(400, std::string("field '") + field + "' must be a string", field);
  out = parsed.at(field).get<std::string>();
  if (trim(out).empty()) return error(400, std::string("field '") + field + "' is empty", field);
  return std::nullopt;
}

double margin(const adoptmap::SectionPrediction& p, const adoptmap::MergedModel& merged) {
  std::vector<double> sums;
  for (const auto label : adoptmap::kLabels) {
    if (merged.topic(label).embedding) sums.push_back(p.sums[adoptmap::label_index(label)]);
  }
  std::sort(sums.rbegin(), sums.rend());
  return sums.size() < 2 ? 0.0 : sums[0] - sums[1];
}

}  // namespace

Api::Api(const ServiceConfig& config, const corpus::CorpusStore& store, const adoptmap::MergedModel& merged,
         const corpus::DomainIndex& index, std::vector<adoptmap::SectionPrediction> predictions,
         embed::EmbeddingProvider& provider, mentor::LlmProvider& llm)
    : config_(config),
      store_(store),
      merged_(merged),
      index_(index),
      predictions_(std::move(predictions)),
      provider_(provider),
      llm_(llm),
      augment_limiter_(config.augment_per_minute) {
  for (std::size_t i = 0; i < predictions_.size(); ++i) {
    const auto* section = store_.find_section(predictions_[i].section_id);
    if (section == nullptr) throw FormatError("prediction for unknown section " + predictions_[i].section_id);
    by_project_[store_.section_repo(*section)].push_back(i);
  }
}

ApiResponse Api::health() const {
  return {200, json{{"status", "ok"},
                    {"model_id", merged_.model_id},
                    {"llm_model_id", llm_.model_id()},
                    {"thresholds", merged_.thresholds},
                    {"corpus_counts",
                     {{"projects", store_.projects().size()},
                      {"pages", store_.pages().size()},
                      {"sections", store_.sections().size()},
                      {"sentences", store_.sentences().size()}}}}};
}

ApiResponse Api::projects() const {
  json out = json::array();
  for (const auto& p : store_.projects()) {
    const auto it = by_project_.find(p.repo_id);
    out.push_back({{"id", p.repo_id},
                   {"oss_domain", p.oss_domain},
                   {"docs_url", p.docs_url},
                   {"stars", p.stars},
                   {"section_count", it == by_project_.end() ? 0 : it->second.size()}});
  }
  return {200, json{{"projects", out}}};
}

ApiResponse Api::sections(const std::string& project_id, const std::optional<std::string>& label) const {
  if (store_.find_project(project_id) == nullptr) return error(404, "unknown project '" + project_id + "'");
  std::optional<adoptmap::Label> filter;
  if (label) {
    filter = adoptmap::parse_label(*label);
    if (!filter) return error(400, "unknown label '" + *label + "'", "label");
  }
  json out = json::array();
  if (const auto it = by_project_.find(project_id); it != by_project_.end()) {
    for (const auto i : it->second) {
      const auto& p = predictions_[i];
      if (filter && p.label != *filter) continue;
      const auto& section = *store_.find_section(p.section_id);
      const auto& page = *store_.find_page(section.page_id);
      auto item = adoptmap::to_json(p);
      item["heading_path"] = section.heading_path;
      item["page_path"] = page.path;
      item["page_title"] = page.title;
      item["text"] = section.text;
      item["margin"] = margin(p, merged_);
      out.push_back(std::move(item));
    }
  }
  return {200, json{{"project_id", project_id},
                    {"label", filter ? json(std::string(adoptmap::label_name(*filter))) : json(nullptr)},
                    {"sections", out}}};
}

ApiResponse Api::predict(const std::string& body) {
  json parsed;
  std::string text;
  if (auto bad = require_string(body, "text", parsed, text)) return *bad;
  try {
    std::lock_guard lock(embed_mutex_);
    return {200, adoptmap::to_json(adoptmap::predict_text(text, merged_, provider_))};
  } catch (const InvalidArgument& e) {
    return error(400, e.what(), "text");
  } catch (const std::exception& e) {
    spdlog::error("predict failed: {}", e.what());
    return error(503, std::string("embedding provider unavailable: ") + e.what());
  }
}

ApiResponse Api::augment(const std::string& body) {
  json parsed;
  std::string paragraph;
  if (auto bad = require_string(body, "paragraph", parsed, paragraph)) return *bad;
  std::string domain;
  if (auto bad = require_string(body, "domain", parsed, domain)) return *bad;
  if (!index_.has_domain(domain)) return error(400, "unknown domain '" + domain + "'", "domain");
  if (!augment_limiter_.try_acquire()) return error(429, "augmentation rate limit reached, retry later");
  std::lock_guard lock(llm_mutex_);
  return {200, mentor::to_json(mentor::augment(paragraph, domain, index_, llm_, config_.detect_count))};
}

}  // namespace docadopt::service
