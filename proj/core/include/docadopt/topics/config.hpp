#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace docadopt::topics {

enum class RepresentationStep { MMR, KBI };

std::string to_string(RepresentationStep step);
RepresentationStep parse_representation_step(const std::string& name);

struct PipelineConfig {
  // Manifold reduction.
  int n_neighbors = 20;
  int n_components = 20;
  double min_dist = 0.1;
  // Density clustering.
  int min_cluster_size = 50;
  // Vectorizer and c-TF-IDF.
  int ngram_len = 1;
  bool stopwords_enabled = true;
  bool reduce_frequent_words = true;
  int min_df = 2;
  // Seed guidance.
  double seed_multiplier = 1.2;
  double seed_min_similarity = 0.2;
  // Representation refinement.
  std::vector<RepresentationStep> representation_chain{RepresentationStep::MMR, RepresentationStep::KBI};
  double mmr_lambda = 0.7;
  int top_n_words = 20;
  int candidate_pool_size = 50;
  int n_repr_docs = 5;

  std::uint64_t random_seed = 42;

  bool operator==(const PipelineConfig&) const = default;

  /// Throws InvalidArgument naming the first violated constraint.
  void validate() const;
};

void to_json(nlohmann::json& j, const PipelineConfig& c);
/// Missing keys keep their defaults; unknown keys are rejected.
void from_json(const nlohmann::json& j, PipelineConfig& c);

}  // namespace docadopt::topics
