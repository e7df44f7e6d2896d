#include "docadopt/topics/representation.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "docadopt/errors.hpp"

namespace docadopt::topics {

std::vector<std::size_t> mmr_select(std::span<const double> relevance, const std::vector<std::vector<double>>& sim,
                                    double lambda, std::size_t k) {
  const auto n = relevance.size();
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw InvalidArgument("mmr: lambda must be in [0, 1]");
  if (sim.size() != n) throw InvalidArgument("mmr: similarity matrix size does not match candidates");
  std::vector<std::size_t> selected;
  std::vector<bool> taken(n, false);
  std::vector<double> penalty(n, -std::numeric_limits<double>::infinity());
  while (selected.size() < std::min(k, n)) {
    std::size_t best = n;
    double best_score = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      if (taken[i]) continue;
      const double score =
          selected.empty() ? relevance[i] : lambda * relevance[i] - (1.0 - lambda) * penalty[i];
      if (best == n || score > best_score) {
        best = i;
        best_score = score;
      }
    }
    taken[best] = true;
    selected.push_back(best);
    for (std::size_t i = 0; i < n; ++i) penalty[i] = std::max(penalty[i], sim[i][best]);
  }
  return selected;
}

std::vector<TermWeight> mmr(const std::vector<std::string>& candidates, const std::vector<embed::Vector>& term_embeddings,
                            const embed::Vector& topic_embedding, double lambda, std::size_t k) {
  const auto n = candidates.size();
  if (term_embeddings.size() != n) throw InvalidArgument("mmr: one embedding per candidate required");
  std::vector<double> relevance(n);
  std::vector<std::vector<double>> sim(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    relevance[i] = embed::cosine(term_embeddings[i], topic_embedding);
    for (std::size_t j = 0; j <= i; ++j) sim[i][j] = sim[j][i] = embed::cosine(term_embeddings[i], term_embeddings[j]);
  }
  std::vector<TermWeight> out;
  for (const auto i : mmr_select(relevance, sim, lambda, k)) out.emplace_back(candidates[i], relevance[i]);
  return out;
}

std::vector<TermWeight> kbi_rerank(const std::vector<std::string>& candidates,
                                   const std::vector<embed::Vector>& term_embeddings,
                                   const std::vector<embed::Vector>& representative_embeddings, std::size_t k) {
  if (term_embeddings.size() != candidates.size()) throw InvalidArgument("kbi: one embedding per candidate required");
  if (representative_embeddings.empty()) throw InvalidArgument("kbi: topic has no representative sentences");
  const auto centroid = embed::mean(representative_embeddings);
  std::vector<TermWeight> out;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    out.emplace_back(candidates[i], embed::cosine(term_embeddings[i], centroid));
  }
  std::stable_sort(out.begin(), out.end(), [](const TermWeight& a, const TermWeight& b) { return a.second > b.second; });
  if (out.size() > k) out.resize(k);
  return out;
}

std::vector<std::size_t> representative_members(const std::vector<SparseCounts>& member_counts,
                                                std::span<const double> ctfidf_row, std::size_t n) {
  std::vector<double> score(member_counts.size(), 0.0);
  for (std::size_t i = 0; i < member_counts.size(); ++i) {
    for (const auto& [term, count] : member_counts[i]) score[i] += ctfidf_row[term];
  }
  std::vector<std::size_t> order(member_counts.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return score[a] > score[b]; });
  if (order.size() > n) order.resize(n);
  return order;
}

std::vector<TermWeight> top_ctfidf_terms(std::span<const double> row, const std::vector<std::string>& vocabulary,
                                         std::size_t pool) {
  std::vector<TermWeight> out;
  for (std::size_t t = 0; t < row.size(); ++t) {
    if (row[t] > 0.0) out.emplace_back(vocabulary[t], row[t]);
  }
  std::sort(out.begin(), out.end(), [](const TermWeight& a, const TermWeight& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  if (out.size() > pool) out.resize(pool);
  return out;
}

std::vector<embed::Vector> TermEmbeddings::get(const std::vector<std::string>& terms) {
  std::vector<std::string> missing;
  {
    std::lock_guard lock(mutex_);
    for (const auto& t : terms) {
      if (!cache_.contains(t)) missing.push_back(t);
    }
  }
  std::sort(missing.begin(), missing.end());
  missing.erase(std::unique(missing.begin(), missing.end()), missing.end());
  auto fresh = missing.empty() ? std::vector<embed::Vector>{} : provider_.embed(missing);
  std::lock_guard lock(mutex_);
  for (std::size_t i = 0; i < missing.size(); ++i) cache_.emplace(missing[i], std::move(fresh[i]));
  std::vector<embed::Vector> out;
  out.reserve(terms.size());
  for (const auto& t : terms) out.push_back(cache_.at(t));
  return out;
}

RepresentationSettings representation_settings(const PipelineConfig& config) {
  return RepresentationSettings{config.representation_chain, config.mmr_lambda,
                                static_cast<std::size_t>(config.top_n_words),
                                static_cast<std::size_t>(config.candidate_pool_size),
                                static_cast<std::size_t>(config.n_repr_docs)};
}

std::vector<TermWeight> represent(const TopicTerms& topic, const std::vector<std::string>& vocabulary,
                                  const RepresentationSettings& settings, TermEmbeddings& embeddings) {
  auto current = top_ctfidf_terms(topic.ctfidf_row, vocabulary, std::max(settings.candidate_pool_size, settings.top_n));
  if (current.empty()) return current;

  auto names = [](const std::vector<TermWeight>& terms) {
    std::vector<std::string> out;
    for (const auto& [t, w] : terms) out.push_back(t);
    return out;
  };

  for (const auto step : settings.chain) {
    const auto terms = names(current);
    const auto vectors = embeddings.get(terms);
    if (step == RepresentationStep::MMR) {
      if (topic.topic_embedding == nullptr) continue;
      current = mmr(terms, vectors, *topic.topic_embedding, settings.mmr_lambda, settings.top_n);
    } else {
      std::vector<SparseCounts> counts;
      for (const auto* c : topic.member_counts) counts.push_back(*c);
      std::vector<embed::Vector> reps;
      for (const auto i : representative_members(counts, topic.ctfidf_row, settings.n_repr_docs)) {
        reps.push_back(*topic.member_embeddings[i]);
      }
      if (reps.empty()) continue;
      current = kbi_rerank(terms, vectors, reps, settings.top_n);
    }
  }
  if (current.size() > settings.top_n) current.resize(settings.top_n);
  return current;
}

}  // namespace docadopt::topics
