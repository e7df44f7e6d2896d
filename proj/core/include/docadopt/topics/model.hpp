#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "docadopt/embed/provider.hpp"
#include "docadopt/topics/config.hpp"
#include "docadopt/topics/ctfidf.hpp"
#include "docadopt/topics/reduce.hpp"
#include "docadopt/topics/representation.hpp"
#include "docadopt/topics/seed.hpp"
#include "docadopt/topics/vectorizer.hpp"
#include "docadopt/types.hpp"

namespace docadopt::topics {

inline constexpr int kModelFormatVersion = 1;
inline constexpr int kOutlierTopic = -1;

/// Fitted sentences: raw (un-nudged) embeddings rounded to float precision and
/// term counts over the model vocabulary. Shared, immutable once built.
class SentenceTable {
 public:
  std::vector<std::string> ids;
  std::vector<std::string> texts;
  std::vector<embed::Vector> embeddings;
  std::vector<SparseCounts> counts;

  std::size_t size() const { return ids.size(); }
  void build_index();
  /// Throws NotFound.
  std::size_t position(const std::string& sentence_id) const;
  bool contains(const std::string& sentence_id) const { return index_.contains(sentence_id); }

  bool same_rows(const SentenceTable& o) const {
    return ids == o.ids && texts == o.texts && embeddings == o.embeddings;
  }
  bool operator==(const SentenceTable& o) const { return same_rows(o) && counts == o.counts; }

 private:
  std::unordered_map<std::string, std::size_t> index_;
};

struct Topic {
  int topic_id = kOutlierTopic;
  std::vector<std::string> member_sentence_ids;
  std::size_t size = 0;
  embed::Vector embedding;  // mean of member embeddings
  std::vector<TermWeight> representation;

  bool operator==(const Topic&) const = default;
};

struct TopicModel {
  PipelineConfig config;
  std::string model_id;
  std::string reducer;
  std::string clusterer;
  SeedTopicSet seed;
  std::vector<std::string> seed_terms;
  Vectorizer vectorizer;
  /// Outlier topic first when present, then 0..k-1 by descending size.
  std::vector<Topic> topics;
  /// One row per entry of `topics`; all-zero for a topic without vocabulary terms.
  Matrix ctfidf;
  std::shared_ptr<const SentenceTable> sentences;
  /// Topic id of each sentence-table row.
  std::vector<int> assignments;

  /// Throws NotFound.
  const Topic& topic(int topic_id) const;
  std::size_t topic_row(int topic_id) const;

  bool operator==(const TopicModel& o) const;
};

/// embed -> seed nudge -> reduce -> cluster -> c-TF-IDF -> representation chain.
/// Throws InvalidArgument with fewer than 2 * min_cluster_size sentences and
/// Error when clustering yields no topic.
TopicModel fit(const std::vector<Sentence>& sentences, embed::EmbeddingProvider& provider, Reducer& reducer,
               Clusterer& clusterer, const SeedTopicSet& seed, const PipelineConfig& config);

/// Directory layout: config.json, vocabulary.json, topics.jsonl,
/// sentences.jsonl, embeddings.f32, ctfidf.f64.
void save_model(const TopicModel& model, const std::filesystem::path& dir);
TopicModel load_model(const std::filesystem::path& dir);

/// Little-endian dense matrix block: 4-byte magic, u32 version, u64 rows,
/// u64 cols, then rows*cols float32 ("DAEM") or float64 ("DACT") values.
void write_matrix_block(const std::filesystem::path& path, const std::vector<std::vector<double>>& rows,
                        std::size_t cols, bool as_float32);
std::vector<std::vector<double>> read_matrix_block(const std::filesystem::path& path, bool as_float32);

}  // namespace docadopt::topics
