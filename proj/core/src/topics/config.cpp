#include "docadopt/topics/config.hpp"

#include <set>

#include "docadopt/errors.hpp"

namespace docadopt::topics {

using nlohmann::json;

std::string to_string(RepresentationStep step) { return step == RepresentationStep::MMR ? "MMR" : "KBI"; }

RepresentationStep parse_representation_step(const std::string& name) {
  if (name == "MMR") return RepresentationStep::MMR;
  if (name == "KBI") return RepresentationStep::KBI;
  throw InvalidArgument("unknown representation step '" + name + "' (expected MMR or KBI)");
}

void PipelineConfig::validate() const {
  auto fail = [](const std::string& msg) { throw InvalidArgument("pipeline config: " + msg); };
  if (n_neighbors < 2 || n_neighbors > 100) fail("n_neighbors must be in [2, 100]");
  if (n_components < 2) fail("n_components must be at least 2");
  if (!(min_dist >= 0.0 && min_dist <= 1.0)) fail("min_dist must be in [0, 1]");
  if (min_cluster_size < 2) fail("min_cluster_size must be at least 2");
  if (ngram_len < 1) fail("ngram_len must be at least 1");
  if (min_df < 1) fail("min_df must be at least 1");
  if (!(seed_multiplier > 0.0)) fail("seed_multiplier must be positive");
  if (!(mmr_lambda >= 0.0 && mmr_lambda <= 1.0)) fail("mmr_lambda must be in [0, 1]");
  if (top_n_words < 1) fail("top_n_words must be at least 1");
  if (candidate_pool_size < 1) fail("candidate_pool_size must be at least 1");
  if (n_repr_docs < 1) fail("n_repr_docs must be at least 1");
}

void to_json(json& j, const PipelineConfig& c) {
  json chain = json::array();
  for (const auto step : c.representation_chain) chain.push_back(to_string(step));
  j = json{{"n_neighbors", c.n_neighbors},
           {"n_components", c.n_components},
           {"min_dist", c.min_dist},
           {"min_cluster_size", c.min_cluster_size},
           {"ngram_len", c.ngram_len},
           {"stopwords_enabled", c.stopwords_enabled},
           {"reduce_frequent_words", c.reduce_frequent_words},
           {"min_df", c.min_df},
           {"seed_multiplier", c.seed_multiplier},
           {"seed_min_similarity", c.seed_min_similarity},
           {"representation_chain", chain},
           {"mmr_lambda", c.mmr_lambda},
           {"top_n_words", c.top_n_words},
           {"candidate_pool_size", c.candidate_pool_size},
           {"n_repr_docs", c.n_repr_docs},
           {"random_seed", c.random_seed}};
}

void from_json(const json& j, PipelineConfig& c) {
  static const std::set<std::string> known = {
      "n_neighbors",  "n_components",        "min_dist",   "min_cluster_size",     "ngram_len",
      "stopwords_enabled", "reduce_frequent_words", "min_df", "seed_multiplier", "seed_min_similarity",
      "representation_chain", "mmr_lambda",  "top_n_words", "candidate_pool_size", "n_repr_docs",
      "random_seed"};
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) throw InvalidArgument("pipeline config: unknown key '" + key + "'");
  }
  auto get = [&](const char* key, auto& field) {
    if (j.contains(key)) j.at(key).get_to(field);
  };
  get("n_neighbors", c.n_neighbors);
  get("n_components", c.n_components);
  get("min_dist", c.min_dist);
  get("min_cluster_size", c.min_cluster_size);
  get("ngram_len", c.ngram_len);
  get("stopwords_enabled", c.stopwords_enabled);
  get("reduce_frequent_words", c.reduce_frequent_words);
  get("min_df", c.min_df);
  get("seed_multiplier", c.seed_multiplier);
  get("seed_min_similarity", c.seed_min_similarity);
  if (j.contains("representation_chain")) {
    c.representation_chain.clear();
    for (const auto& s : j.at("representation_chain")) c.representation_chain.push_back(parse_representation_step(s));
  }
  get("mmr_lambda", c.mmr_lambda);
  get("top_n_words", c.top_n_words);
  get("candidate_pool_size", c.candidate_pool_size);
  get("n_repr_docs", c.n_repr_docs);
  get("random_seed", c.random_seed);
}

}  // namespace docadopt::topics
