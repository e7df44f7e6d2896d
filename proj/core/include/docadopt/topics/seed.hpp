#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "docadopt/embed/provider.hpp"
#include "docadopt/topics/config.hpp"
#include "docadopt/topics/vectorizer.hpp"

namespace docadopt::topics {

struct SeedTopic {
  std::string name;
  std::vector<std::string> phrases;

  bool operator==(const SeedTopic&) const = default;
};

/// Named phrase lists steering topic formation. Names are unique, lists non-empty.
struct SeedTopicSet {
  std::vector<SeedTopic> topics;

  bool empty() const { return topics.empty(); }
  void validate() const;
  bool operator==(const SeedTopicSet&) const = default;
};

void to_json(nlohmann::json& j, const SeedTopicSet& s);
void from_json(const nlohmann::json& j, SeedTopicSet& s);

struct SeedResult {
  std::vector<embed::Vector> embeddings;        // nudged copies of the input
  std::vector<embed::Vector> seed_embeddings;   // one per seed topic
  std::vector<std::optional<std::size_t>> assigned;  // seed topic each sentence was nudged toward
  std::vector<std::string> seed_terms;          // lowercased phrases, sorted, unique
};

/// Seed guidance. Each seed topic is embedded as the mean of its phrase
/// embeddings. A sentence whose cosine to one seed embedding is strictly
/// greater than to every other seed embedding, and at least
/// seed_min_similarity, is replaced by the mean of itself and that seed embedding.
SeedResult apply_seed(const std::vector<embed::Vector>& sentence_embeddings, const SeedTopicSet& seed,
                      embed::EmbeddingProvider& provider, const PipelineConfig& config);

/// Vocabulary ids of seed terms (exact match after lowercasing).
std::vector<TermId> seed_term_ids(const std::vector<std::string>& seed_terms, const Vectorizer& vectorizer);

}  // namespace docadopt::topics
