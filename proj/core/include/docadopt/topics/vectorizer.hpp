#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "docadopt/text.hpp"

namespace docadopt::topics {

using TermId = std::uint32_t;
/// Sparse term counts of one text, sorted by term id.
using SparseCounts = std::vector<std::pair<TermId, std::uint32_t>>;

/// Bag-of-n-grams counter with a vocabulary fixed at fit time.
class Vectorizer {
 public:
  Vectorizer() = default;
  Vectorizer(TokenizerConfig tokenizer, int ngram_len, int min_df);

  /// Vocabulary = terms occurring in at least min_df texts, sorted lexicographically.
  void fit(const std::vector<std::string>& texts);
  /// Rebuild from a stored vocabulary.
  void set_vocabulary(std::vector<std::string> vocabulary);

  SparseCounts transform(std::string_view text) const;
  std::vector<std::string> terms(std::string_view text) const;

  const std::vector<std::string>& vocabulary() const { return vocabulary_; }
  std::optional<TermId> find(const std::string& term) const;
  const TokenizerConfig& tokenizer() const { return tokenizer_; }
  int ngram_len() const { return ngram_len_; }

 private:
  TokenizerConfig tokenizer_;
  int ngram_len_ = 1;
  int min_df_ = 1;
  std::vector<std::string> vocabulary_;
  std::unordered_map<std::string, TermId> ids_;
};

}  // namespace docadopt::topics
