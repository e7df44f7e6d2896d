#include "docadopt/topics/ctfidf.hpp"

#include <cmath>

#include "docadopt/errors.hpp"

namespace docadopt::topics {

Matrix ctfidf(const Matrix& counts, bool reduce_frequent_words) {
  if (counts.empty()) return {};
  const auto n_terms = counts.front().size();
  std::vector<double> f(n_terms, 0.0);
  std::vector<double> row_total(counts.size(), 0.0);
  for (std::size_t c = 0; c < counts.size(); ++c) {
    if (counts[c].size() != n_terms) throw InvalidArgument("c-TF-IDF: ragged count matrix");
    for (std::size_t t = 0; t < n_terms; ++t) {
      const double x = counts[c][t];
      if (!(x >= 0.0)) throw InvalidArgument("c-TF-IDF: negative count in topic row " + std::to_string(c));
      f[t] += x;
      row_total[c] += x;
    }
    if (row_total[c] == 0.0) throw InvalidArgument("c-TF-IDF: topic row " + std::to_string(c) + " has no terms");
  }
  double a = 0.0;
  for (const double r : row_total) a += r;
  a /= static_cast<double>(counts.size());

  std::vector<double> idf(n_terms, 0.0);
  for (std::size_t t = 0; t < n_terms; ++t) {
    if (f[t] > 0.0) idf[t] = std::log(1.0 + a / f[t]);
  }

  Matrix out(counts.size(), std::vector<double>(n_terms, 0.0));
  for (std::size_t c = 0; c < counts.size(); ++c) {
    for (std::size_t t = 0; t < n_terms; ++t) {
      const double tf = counts[c][t];
      if (tf == 0.0) continue;
      const double g = reduce_frequent_words ? std::sqrt(tf / row_total[c]) : tf;
      out[c][t] = g * idf[t];
    }
  }
  return out;
}

Matrix group_counts(const std::vector<SparseCounts>& texts, const std::vector<int>& labels, std::size_t n_groups,
                    std::size_t n_terms) {
  if (labels.size() != texts.size()) throw InvalidArgument("group_counts: labels and texts differ in length");
  Matrix out(n_groups, std::vector<double>(n_terms, 0.0));
  for (std::size_t i = 0; i < texts.size(); ++i) {
    if (labels[i] < 0) continue;
    auto& row = out.at(static_cast<std::size_t>(labels[i]));
    for (const auto& [term, n] : texts[i]) row.at(term) += n;
  }
  return out;
}

void apply_term_multiplier(Matrix& weights, const std::vector<TermId>& terms, double multiplier) {
  for (auto& row : weights) {
    for (const auto t : terms) row.at(t) *= multiplier;
  }
}

}  // namespace docadopt::topics
