#include "docadopt/adoptmap/labels.hpp"

#include <set>

#include "docadopt/errors.hpp"

namespace docadopt::adoptmap {

using nlohmann::json;

namespace {

constexpr std::array<std::string_view, kLabelCount> kNames = {"Outlier", "License", "Functional Suitability",
                                                              "Compatibility", "Project's Maintenance"};

}  // namespace

std::string_view label_name(Label label) { return kNames[label_index(label)]; }

std::optional<Label> parse_label(std::string_view name) {
  for (const auto label : kLabels) {
    if (label_name(label) == name) return label;
  }
  return std::nullopt;
}

json scores_json(const LabelScores& scores) {
  json out = json::object();
  for (const auto label : kLabels) out[std::string(label_name(label))] = scores[label_index(label)];
  return out;
}

LabelScores scores_from_json(const json& j) {
  LabelScores out{};
  for (const auto label : kLabels) out[label_index(label)] = j.at(std::string(label_name(label))).get<double>();
  return out;
}

std::string ToiSpec::search_string() const {
  std::string out;
  for (const auto& p : phrases) {
    if (!out.empty()) out += ", ";
    out += p;
  }
  return out;
}

std::vector<ToiSpec> default_tois() {
  return {
      {Label::License,
       {"license", "MIT", "bsd", "GPL", "Apache", "Redistribution", "copyright notice", "disclaimer", "LIABLE", "AS IS",
        "MERCHANTABILITY"}},
      {Label::FunctionalSuitability,
       {"Ease of use", "Functionality & Features", "The existence of examples of use cases", "Project's Performance"}},
      {Label::Compatibility, {"Compatibility"}},
      {Label::ProjectsMaintenance,
       {"Project's Maintenance", "Project's usage trends", "Project's versioning", "Community Adoption"}},
  };
}

void validate_tois(const std::vector<ToiSpec>& tois) {
  std::set<Label> seen;
  for (const auto& t : tois) {
    if (t.label == Label::Outlier) throw InvalidArgument("Outlier cannot be a Topic of Interest");
    if (!seen.insert(t.label).second) throw InvalidArgument("duplicate Topic of Interest " + t.name());
    if (t.phrases.empty() || t.search_string().empty()) {
      throw InvalidArgument("Topic of Interest " + t.name() + " has no phrases");
    }
  }
}

void to_json(json& j, const ToiSpec& t) { j = json{{"name", t.name()}, {"phrases", t.phrases}}; }

void from_json(const json& j, ToiSpec& t) {
  const auto name = j.at("name").get<std::string>();
  const auto label = parse_label(name);
  if (!label) throw InvalidArgument("unknown Topic of Interest '" + name + "'");
  t.label = *label;
  j.at("phrases").get_to(t.phrases);
}

void Thresholds::validate() const {
  if (!(topics_similarity >= 0.0 && topics_similarity <= 1.0)) {
    throw InvalidArgument("thresholds: topics_similarity must be in [0, 1]");
  }
  if (!(reduction_min_similarity >= 0.0 && reduction_min_similarity <= 1.0)) {
    throw InvalidArgument("thresholds: reduction_min_similarity must be in [0, 1]");
  }
  if (topic_representation_size < 1) throw InvalidArgument("thresholds: topic_representation_size must be at least 1");
}

void to_json(json& j, const Thresholds& t) {
  j = json{{"topics_similarity", t.topics_similarity},
           {"reduction_min_similarity", t.reduction_min_similarity},
           {"topic_representation_size", t.topic_representation_size}};
}

void from_json(const json& j, Thresholds& t) {
  for (const auto& [key, value] : j.items()) {
    if (key != "topics_similarity" && key != "reduction_min_similarity" && key != "topic_representation_size") {
      throw InvalidArgument("thresholds: unknown key '" + key + "'");
    }
  }
  if (j.contains("topics_similarity")) j.at("topics_similarity").get_to(t.topics_similarity);
  if (j.contains("reduction_min_similarity")) j.at("reduction_min_similarity").get_to(t.reduction_min_similarity);
  if (j.contains("topic_representation_size")) j.at("topic_representation_size").get_to(t.topic_representation_size);
}

}  // namespace docadopt::adoptmap
