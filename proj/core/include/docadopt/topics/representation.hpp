#pragma once

#include <map>
#include <mutex>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "docadopt/embed/provider.hpp"
#include "docadopt/topics/config.hpp"
#include "docadopt/topics/vectorizer.hpp"

namespace docadopt::topics {

using TermWeight = std::pair<std::string, double>;

/// Greedy maximal marginal relevance over indices 0..n-1. The first pick is
/// the most relevant candidate; each later pick maximizes
/// lambda * relevance[i] - (1 - lambda) * max_{s selected} sim[i][s].
/// Ties go to the lower index. Returns min(k, n) indices in pick order.
std::vector<std::size_t> mmr_select(std::span<const double> relevance, const std::vector<std::vector<double>>& sim,
                                    double lambda, std::size_t k);

/// MMR over candidate terms with relevance = cosine(term embedding, topic
/// embedding). Output weights are those relevances, in pick order.
std::vector<TermWeight> mmr(const std::vector<std::string>& candidates, const std::vector<embed::Vector>& term_embeddings,
                            const embed::Vector& topic_embedding, double lambda, std::size_t k);

/// Candidates re-ranked by cosine to the mean of the representative
/// sentence embeddings (descending, ties by candidate order), truncated to k.
std::vector<TermWeight> kbi_rerank(const std::vector<std::string>& candidates,
                                   const std::vector<embed::Vector>& term_embeddings,
                                   const std::vector<embed::Vector>& representative_embeddings, std::size_t k);

/// Top n members by summed c-TF-IDF weight of their distinct terms,
/// descending, ties by member order.
std::vector<std::size_t> representative_members(const std::vector<SparseCounts>& member_counts,
                                                std::span<const double> ctfidf_row, std::size_t n);

/// Top `pool` terms of a c-TF-IDF row with positive weight, descending, ties lexicographic.
std::vector<TermWeight> top_ctfidf_terms(std::span<const double> ctfidf_row, const std::vector<std::string>& vocabulary,
                                         std::size_t pool);

/// Memoized term embeddings; safe for concurrent use.
class TermEmbeddings {
 public:
  explicit TermEmbeddings(embed::EmbeddingProvider& provider) : provider_(provider) {}
  std::vector<embed::Vector> get(const std::vector<std::string>& terms);

 private:
  embed::EmbeddingProvider& provider_;
  std::mutex mutex_;
  std::map<std::string, embed::Vector> cache_;
};

struct RepresentationSettings {
  std::vector<RepresentationStep> chain;
  double mmr_lambda = 0.7;
  std::size_t top_n = 20;
  std::size_t candidate_pool_size = 50;
  std::size_t n_repr_docs = 5;
};

RepresentationSettings representation_settings(const PipelineConfig& config);

/// One topic's inputs to the representation chain.
struct TopicTerms {
  std::span<const double> ctfidf_row;
  const embed::Vector* topic_embedding = nullptr;  // may be null (MMR then skipped)
  std::vector<const SparseCounts*> member_counts;
  std::vector<const embed::Vector*> member_embeddings;
};

/// Candidate pool from c-TF-IDF, then each chain step in order: MMR selects
/// top_n diverse terms, KBI re-ranks the current list against the
/// representative sentences. An empty chain yields the top_n c-TF-IDF terms.
std::vector<TermWeight> represent(const TopicTerms& topic, const std::vector<std::string>& vocabulary,
                                  const RepresentationSettings& settings, TermEmbeddings& embeddings);

}  // namespace docadopt::topics
