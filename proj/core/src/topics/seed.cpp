#include "docadopt/topics/seed.hpp"

#include <algorithm>
#include <set>

#include "docadopt/errors.hpp"
#include "docadopt/text.hpp"

namespace docadopt::topics {

using nlohmann::json;

void SeedTopicSet::validate() const {
  std::set<std::string> names;
  for (const auto& t : topics) {
    if (t.phrases.empty()) throw InvalidArgument("seed topic '" + t.name + "' has no phrases");
    if (!names.insert(t.name).second) throw InvalidArgument("duplicate seed topic name '" + t.name + "'");
  }
}

void to_json(json& j, const SeedTopicSet& s) {
  j = json::array();
  for (const auto& t : s.topics) j.push_back({{"name", t.name}, {"phrases", t.phrases}});
}

void from_json(const json& j, SeedTopicSet& s) {
  s.topics.clear();
  for (const auto& t : j) s.topics.push_back({t.at("name"), t.at("phrases")});
}

SeedResult apply_seed(const std::vector<embed::Vector>& sentence_embeddings, const SeedTopicSet& seed,
                      embed::EmbeddingProvider& provider, const PipelineConfig& config) {
  if (seed.empty()) throw InvalidArgument("apply_seed: seed set is empty");
  seed.validate();

  SeedResult out;
  out.embeddings = sentence_embeddings;
  out.assigned.assign(sentence_embeddings.size(), std::nullopt);

  std::set<std::string> terms;
  for (const auto& topic : seed.topics) {
    out.seed_embeddings.push_back(embed::mean(provider.embed(topic.phrases)));
    for (const auto& p : topic.phrases) terms.insert(to_lower(collapse_whitespace(p)));
  }
  out.seed_terms.assign(terms.begin(), terms.end());
  for (std::size_t i = 0; i < sentence_embeddings.size(); ++i) {
    const auto& e = sentence_embeddings[i];
    std::optional<std::size_t> best;
    double best_sim = -2.0;
    bool unique = true;
    for (std::size_t s = 0; s < out.seed_embeddings.size(); ++s) {
      const double sim = embed::cosine(e, out.seed_embeddings[s]);
      if (sim > best_sim) {
        best = s;
        best_sim = sim;
        unique = true;
      } else if (sim == best_sim) {
        unique = false;
      }
    }
    if (!best || !unique || best_sim < config.seed_min_similarity) continue;
    out.assigned[i] = best;
    out.embeddings[i] = embed::mean({e, out.seed_embeddings[*best]});
  }
  return out;
}

std::vector<TermId> seed_term_ids(const std::vector<std::string>& seed_terms, const Vectorizer& vectorizer) {
  std::vector<TermId> out;
  for (const auto& t : seed_terms) {
    if (const auto id = vectorizer.find(t)) out.push_back(*id);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace docadopt::topics
