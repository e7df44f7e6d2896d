#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "docadopt/adoptmap/merge.hpp"
#include "docadopt/corpus/store.hpp"

namespace docadopt::adoptmap {

struct SentencePrediction {
  std::string sentence_id;
  Label label = Label::Outlier;
  LabelScores sims{};
  bool tie = false;

  bool operator==(const SentencePrediction&) const = default;
};

struct SectionPrediction {
  std::string section_id;
  Label label = Label::Outlier;
  LabelScores sums{};
  bool tie = false;
  std::vector<SentencePrediction> sentences;

  bool operator==(const SectionPrediction&) const = default;
};

/// Embeddings used for prediction: provider output rounded to float
/// precision, the same treatment sentences get at fit time.
std::vector<embed::Vector> prediction_embeddings(embed::EmbeddingProvider& provider,
                                                 const std::vector<std::string>& texts);

/// Argmax over labels whose topic has an embedding; exact ties go to the
/// label declared first and set `tie`.
std::pair<Label, bool> argmax_label(const LabelScores& scores, const MergedModel& merged);

/// Cosine to every labeled topic embedding (0 for a topic without one).
SentencePrediction predict_embedding(const std::string& sentence_id, const embed::Vector& embedding,
                                     const MergedModel& merged);

/// Empty or whitespace-only text yields Outlier with zero similarities.
SentencePrediction predict_sentence(const std::string& sentence_id, const std::string& text, const MergedModel& merged,
                                    embed::EmbeddingProvider& provider);

/// Per-label sums of sentence similarities, label = argmax of the sums.
SectionPrediction combine(const std::string& section_id, std::vector<SentencePrediction> sentences,
                          const MergedModel& merged);

/// Sentences given as (sentence_id, text); at least one required.
SectionPrediction predict_section(const std::string& section_id,
                                  const std::vector<std::pair<std::string, std::string>>& sentences,
                                  const MergedModel& merged, embed::EmbeddingProvider& provider);

/// Ad-hoc text: split into sentences, predicted as one section with id "adhoc".
SectionPrediction predict_text(const std::string& text, const MergedModel& merged, embed::EmbeddingProvider& provider);

/// Every section of a corpus, in corpus order. Each distinct sentence is embedded once.
std::vector<SectionPrediction> predict_corpus(const corpus::CorpusStore& store, const MergedModel& merged,
                                              embed::EmbeddingProvider& provider);

nlohmann::json to_json(const SectionPrediction& p);
SectionPrediction section_prediction_from_json(const nlohmann::json& j);

void save_predictions(const std::vector<SectionPrediction>& predictions, const std::filesystem::path& path);
std::vector<SectionPrediction> load_predictions(const std::filesystem::path& path);

}  // namespace docadopt::adoptmap
