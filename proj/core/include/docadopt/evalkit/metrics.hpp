#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "docadopt/adoptmap/labels.hpp"

namespace docadopt::evalkit {

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t support = 0;

  bool operator==(const ClassMetrics&) const = default;
};

/// Per-class scores over class indices 0..n-1. confusion[gold][pred].
struct IndexedReport {
  std::vector<ClassMetrics> per_class;
  std::vector<std::vector<std::size_t>> confusion;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t total = 0;

  bool operator==(const IndexedReport&) const = default;
};

/// Support-weighted precision/recall/F1. A class with no predictions has
/// precision 0; with no gold items recall 0 and weight 0. Throws
/// InvalidArgument on a length mismatch, empty input or an index >= n_classes.
IndexedReport weighted_metrics_indexed(const std::vector<std::size_t>& preds, const std::vector<std::size_t>& gold,
                                       std::size_t n_classes);

struct MetricsReport {
  std::array<ClassMetrics, adoptmap::kLabelCount> per_label{};
  std::array<std::array<std::size_t, adoptmap::kLabelCount>, adoptmap::kLabelCount> confusion{};
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t total = 0;

  bool operator==(const MetricsReport&) const = default;
};

MetricsReport weighted_metrics(const std::vector<adoptmap::Label>& preds, const std::vector<adoptmap::Label>& gold);

nlohmann::json to_json(const MetricsReport& r);
/// Fixed-width table: one row per label plus the weighted average.
std::string format_table(const MetricsReport& r);

}  // namespace docadopt::evalkit
