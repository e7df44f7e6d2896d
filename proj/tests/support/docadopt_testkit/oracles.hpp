#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "docadopt/embed/vector.hpp"

namespace docadopt::testkit {

using DenseMatrix = std::vector<std::vector<double>>;

/// c-TF-IDF straight from the definition: one term at a time, every sum
/// recomputed from scratch.
DenseMatrix ctfidf_oracle(const DenseMatrix& counts, bool reduce_frequent_words);

/// A section as the index sees it: its domain and its token stream.
struct TokenizedSection {
  std::string domain;
  std::vector<std::string> tokens;
};

struct RecountedStats {
  std::size_t tf = 0;
  std::size_t df = 0;
  std::size_t n_sections = 0;
  std::size_t df_dom = 0;
  std::size_t domains = 0;
};

RecountedStats recount(const std::string& term, const std::string& domain,
                       const std::vector<TokenizedSection>& sections);

/// Technical-term score from a fresh recount over the raw sections.
double tech_score_oracle(const std::string& term, const std::string& domain,
                         const std::vector<TokenizedSection>& sections);

struct RecountedMetrics {
  std::vector<double> precision;
  std::vector<double> recall;
  std::vector<double> f1;
  std::vector<std::size_t> support;
  double weighted_precision = 0.0;
  double weighted_recall = 0.0;
  double weighted_f1 = 0.0;
};

/// Per-class counts by scanning the label vectors once per class.
RecountedMetrics metrics_oracle(const std::vector<std::size_t>& preds, const std::vector<std::size_t>& gold,
                                std::size_t n_classes);

/// Size-weighted mean of embeddings.
embed::Vector weighted_mean_oracle(const std::vector<embed::Vector>& embeddings, const std::vector<double>& weights);

double relative_error(double expected, double actual);

}  // namespace docadopt::testkit
