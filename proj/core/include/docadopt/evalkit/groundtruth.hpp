#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "docadopt/adoptmap/labels.hpp"
#include "docadopt/adoptmap/predict.hpp"
#include "docadopt/evalkit/metrics.hpp"

namespace docadopt::evalkit {

struct LabeledSection {
  std::string section_id;
  adoptmap::Label gold_label = adoptmap::Label::Outlier;
  std::optional<std::pair<adoptmap::Label, adoptmap::Label>> annotator_labels;

  bool operator==(const LabeledSection&) const = default;
};

/// Minimal RFC 4180 reader: quoted fields, doubled quotes, CRLF.
std::vector<std::vector<std::string>> parse_csv(const std::string& text);

/// Header section_id,label_a,label_b,gold. Annotator columns may both be
/// empty, in which case gold is required. Disagreeing annotators force gold
/// to Outlier; agreeing annotators fill an empty gold. Duplicate ids, unknown
/// labels and a gold that contradicts agreeing annotators are FormatErrors.
std::vector<LabeledSection> parse_groundtruth(const std::string& csv, const std::string& origin = "groundtruth");
std::vector<LabeledSection> load_groundtruth(const std::filesystem::path& path);
std::string format_groundtruth(const std::vector<LabeledSection>& rows);

/// Aligned (pred, gold) label vectors in groundtruth order. Throws
/// InvalidArgument when a labeled section has no prediction.
std::pair<std::vector<adoptmap::Label>, std::vector<adoptmap::Label>> align(
    const std::vector<adoptmap::SectionPrediction>& predictions, const std::vector<LabeledSection>& gold);

MetricsReport evaluate(const std::vector<adoptmap::SectionPrediction>& predictions,
                       const std::vector<LabeledSection>& gold);

}  // namespace docadopt::evalkit
