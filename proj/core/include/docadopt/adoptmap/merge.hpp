#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <vector>

#include "docadopt/adoptmap/labels.hpp"
#include "docadopt/embed/provider.hpp"
#include "docadopt/topics/model.hpp"

namespace docadopt::adoptmap {

inline constexpr int kMergedFormatVersion = 1;

/// TOIs as guidance seeds for fitting: one seed topic per TOI, same phrases.
topics::SeedTopicSet seed_from_tois(const std::vector<ToiSpec>& tois);

struct TopicMatch {
  int topic_id = 0;
  double similarity = 0.0;

  bool operator==(const TopicMatch&) const = default;
};

/// Topics selected for each TOI, in TOI declaration order.
struct MergePlan {
  std::vector<std::pair<Label, std::vector<TopicMatch>>> entries;

  const std::vector<TopicMatch>* find(Label label) const;
  bool operator==(const MergePlan&) const = default;
};

/// Non-outlier topics whose cosine to the TOI search-string embedding is at
/// least thresholds.topics_similarity, in topic id order.
std::vector<TopicMatch> find_similar_topics(const topics::TopicModel& model, const ToiSpec& toi,
                                            embed::EmbeddingProvider& provider, const Thresholds& thresholds);

/// Keep each topic only under the TOI where its similarity is highest; exact
/// ties go to the TOI listed first (logged).
MergePlan resolve_conflicts(const MergePlan& plans);

struct LabeledTopic {
  Label label = Label::Outlier;
  std::vector<std::size_t> members;   // sentence-table rows, ascending
  std::vector<int> source_topics;     // fitted topic ids folded in
  std::optional<embed::Vector> embedding;  // absent for an empty TOI
  std::vector<topics::TermWeight> representation;

  std::size_t size() const { return members.size(); }
  bool operator==(const LabeledTopic&) const = default;
};

/// Fitted model collapsed onto the five prediction labels.
struct MergedModel {
  std::string model_id;
  Thresholds thresholds;
  std::vector<ToiSpec> tois;
  MergePlan plan;
  std::array<LabeledTopic, kLabelCount> topics;  // indexed by label_index
  std::shared_ptr<const topics::SentenceTable> sentences;
  std::vector<Label> assignments;  // per sentence-table row

  const LabeledTopic& topic(Label label) const { return topics[label_index(label)]; }
  bool operator==(const MergedModel& o) const;
};

/// Each TOI takes the union of its planned topics' members and the
/// size-weighted mean of their embeddings. Noise and unplanned topics fold
/// into Outlier the same way. A TOI with an empty plan keeps the label with no
/// members and no embedding (warned). Representations are left empty.
MergedModel merge(const topics::TopicModel& model, const MergePlan& plan, const std::vector<ToiSpec>& tois,
                  const Thresholds& thresholds);

/// Move each Outlier sentence whose best cosine to a TOI embedding is at
/// least reduction_min_similarity into that TOI. Embeddings are not
/// recomputed. Returns the number of sentences moved.
std::size_t reduce_outliers(MergedModel& merged, const Thresholds& thresholds);

/// Recompute c-TF-IDF over the five label groups and re-run MMR then KBI,
/// truncated to topic_representation_size.
void update_representations(MergedModel& merged, const topics::TopicModel& model, embed::EmbeddingProvider& provider);

/// find_similar_topics for each TOI -> resolve_conflicts -> merge ->
/// reduce_outliers -> update_representations.
MergedModel build_merged_model(const topics::TopicModel& model, const std::vector<ToiSpec>& tois,
                               embed::EmbeddingProvider& provider, const Thresholds& thresholds);

/// Directory layout: merged.json, sentences.jsonl, embeddings.f32.
void save_merged(const MergedModel& merged, const std::filesystem::path& dir);
MergedModel load_merged(const std::filesystem::path& dir);

}  // namespace docadopt::adoptmap
