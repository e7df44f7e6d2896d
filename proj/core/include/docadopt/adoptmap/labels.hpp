#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace docadopt::adoptmap {

/// Prediction labels in declaration order. Outlier comes first, so it wins
/// exact prediction ties.
enum class Label : std::uint8_t { Outlier, License, FunctionalSuitability, Compatibility, ProjectsMaintenance };

inline constexpr std::size_t kLabelCount = 5;
inline constexpr std::array<Label, kLabelCount> kLabels = {Label::Outlier, Label::License, Label::FunctionalSuitability,
                                                           Label::Compatibility, Label::ProjectsMaintenance};

std::string_view label_name(Label label);
std::optional<Label> parse_label(std::string_view name);
inline std::size_t label_index(Label label) { return static_cast<std::size_t>(label); }

using LabelScores = std::array<double, kLabelCount>;

nlohmann::json scores_json(const LabelScores& scores);
LabelScores scores_from_json(const nlohmann::json& j);

/// One Topic of Interest: label plus the seed phrases that describe it.
struct ToiSpec {
  Label label = Label::License;
  std::vector<std::string> phrases;

  std::string name() const { return std::string(label_name(label)); }
  /// Phrases joined by ", ".
  std::string search_string() const;
  bool operator==(const ToiSpec&) const = default;
};

/// The four TOIs with their default phrase lists, in declaration order.
std::vector<ToiSpec> default_tois();

/// Throws InvalidArgument on duplicate labels, an Outlier TOI, or empty phrase lists.
void validate_tois(const std::vector<ToiSpec>& tois);

void to_json(nlohmann::json& j, const ToiSpec& t);
void from_json(const nlohmann::json& j, ToiSpec& t);

struct Thresholds {
  double topics_similarity = 0.3;
  double reduction_min_similarity = 0.2;
  int topic_representation_size = 20;

  bool operator==(const Thresholds&) const = default;
  void validate() const;
};

void to_json(nlohmann::json& j, const Thresholds& t);
void from_json(const nlohmann::json& j, Thresholds& t);

}  // namespace docadopt::adoptmap
