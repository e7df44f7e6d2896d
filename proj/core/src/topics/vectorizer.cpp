#include "docadopt/topics/vectorizer.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace docadopt::topics {

Vectorizer::Vectorizer(TokenizerConfig tokenizer, int ngram_len, int min_df)
    : tokenizer_(tokenizer), ngram_len_(ngram_len), min_df_(min_df) {}

std::vector<std::string> Vectorizer::terms(std::string_view text) const {
  return ngrams(tokenize(text, tokenizer_), static_cast<std::size_t>(ngram_len_));
}

void Vectorizer::fit(const std::vector<std::string>& texts) {
  std::map<std::string, std::size_t> df;
  for (const auto& text : texts) {
    auto ts = terms(text);
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    for (auto& t : ts) ++df[std::move(t)];
  }
  std::vector<std::string> vocab;
  for (const auto& [t, n] : df) {
    if (n >= static_cast<std::size_t>(min_df_)) vocab.push_back(t);
  }
  set_vocabulary(std::move(vocab));
}

void Vectorizer::set_vocabulary(std::vector<std::string> vocabulary) {
  vocabulary_ = std::move(vocabulary);
  ids_.clear();
  for (TermId i = 0; i < vocabulary_.size(); ++i) ids_.emplace(vocabulary_[i], i);
}

std::optional<TermId> Vectorizer::find(const std::string& term) const {
  const auto it = ids_.find(term);
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

SparseCounts Vectorizer::transform(std::string_view text) const {
  std::map<TermId, std::uint32_t> counts;
  for (const auto& t : terms(text)) {
    if (const auto id = find(t)) ++counts[*id];
  }
  return {counts.begin(), counts.end()};
}

}  // namespace docadopt::topics
