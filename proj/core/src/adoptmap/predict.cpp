#include "docadopt/adoptmap/predict.hpp"

#include <fstream>
#include <unordered_map>

#include <spdlog/spdlog.h>

#include "docadopt/errors.hpp"
#include "docadopt/ingest/sentences.hpp"
#include "docadopt/serialize.hpp"
#include "docadopt/text.hpp"

namespace docadopt::adoptmap {

using nlohmann::json;

std::vector<embed::Vector> prediction_embeddings(embed::EmbeddingProvider& provider, const std::vector<std::string>& texts) {
  auto out = provider.embed(texts);
  for (auto& v : out) embed::round_to_float(v);
  return out;
}

std::pair<Label, bool> argmax_label(const LabelScores& scores, const MergedModel& merged) {
  std::optional<Label> best;
  bool tie = false;
  for (const auto label : kLabels) {
    if (!merged.topic(label).embedding) continue;
    const double s = scores[label_index(label)];
    if (!best || s > scores[label_index(*best)]) {
      best = label;
      tie = false;
    } else if (s == scores[label_index(*best)]) {
      tie = true;
    }
  }
  if (!best) throw InvalidArgument("merged model has no labeled topic with an embedding");
  return {*best, tie};
}

SentencePrediction predict_embedding(const std::string& sentence_id, const embed::Vector& embedding,
                                     const MergedModel& merged) {
  SentencePrediction out;
  out.sentence_id = sentence_id;
  for (const auto label : kLabels) {
    const auto& topic = merged.topic(label);
    out.sims[label_index(label)] = topic.embedding ? embed::cosine(embedding, *topic.embedding) : 0.0;
  }
  std::tie(out.label, out.tie) = argmax_label(out.sims, merged);
  if (out.tie) spdlog::debug("predict: sentence {} tied, resolved to {}", sentence_id, label_name(out.label));
  return out;
}

SentencePrediction predict_sentence(const std::string& sentence_id, const std::string& text, const MergedModel& merged,
                                    embed::EmbeddingProvider& provider) {
  if (trim(text).empty()) {
    SentencePrediction out;
    out.sentence_id = sentence_id;
    return out;
  }
  return predict_embedding(sentence_id, prediction_embeddings(provider, {text}).front(), merged);
}

SectionPrediction combine(const std::string& section_id, std::vector<SentencePrediction> sentences,
                          const MergedModel& merged) {
  SectionPrediction out;
  out.section_id = section_id;
  for (const auto& s : sentences) {
    for (std::size_t i = 0; i < kLabelCount; ++i) out.sums[i] += s.sims[i];
  }
  std::tie(out.label, out.tie) = argmax_label(out.sums, merged);
  out.sentences = std::move(sentences);
  return out;
}

SectionPrediction predict_section(const std::string& section_id,
                                  const std::vector<std::pair<std::string, std::string>>& sentences,
                                  const MergedModel& merged, embed::EmbeddingProvider& provider) {
  if (sentences.empty()) throw InvalidArgument("predict_section: section " + section_id + " has no sentences");
  std::vector<std::string> texts;
  for (const auto& [id, text] : sentences) texts.push_back(text);
  const auto vectors = prediction_embeddings(provider, texts);
  std::vector<SentencePrediction> preds;
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    preds.push_back(trim(texts[i]).empty() ? SentencePrediction{sentences[i].first, Label::Outlier, {}, false}
                                           : predict_embedding(sentences[i].first, vectors[i], merged));
  }
  return combine(section_id, std::move(preds), merged);
}

SectionPrediction predict_text(const std::string& text, const MergedModel& merged, embed::EmbeddingProvider& provider) {
  std::vector<std::pair<std::string, std::string>> sentences;
  for (auto& s : ingest::split_sentences(text)) sentences.emplace_back(make_sentence_id(s), std::move(s));
  if (sentences.empty()) throw InvalidArgument("text contains no sentences");
  return predict_section("adhoc", sentences, merged, provider);
}

std::vector<SectionPrediction> predict_corpus(const corpus::CorpusStore& store, const MergedModel& merged,
                                              embed::EmbeddingProvider& provider) {
  std::vector<std::string> texts;
  std::unordered_map<std::string, std::size_t> row;
  for (const auto& s : store.sentences()) {
    row.emplace(s.sentence_id, texts.size());
    texts.push_back(s.text);
  }
  const auto vectors = prediction_embeddings(provider, texts);
  std::vector<SentencePrediction> by_sentence;
  by_sentence.reserve(texts.size());
  for (const auto& s : store.sentences()) by_sentence.push_back(predict_embedding(s.sentence_id, vectors[row.at(s.sentence_id)], merged));

  std::vector<SectionPrediction> out;
  out.reserve(store.sections().size());
  for (const auto& section : store.sections()) {
    std::vector<SentencePrediction> preds;
    for (const auto& id : section.sentence_ids) preds.push_back(by_sentence[row.at(id)]);
    out.push_back(combine(section.section_id, std::move(preds), merged));
  }
  return out;
}

json to_json(const SectionPrediction& p) {
  json sentences = json::array();
  for (const auto& s : p.sentences) {
    sentences.push_back({{"sentence_id", s.sentence_id}, {"label", label_name(s.label)}, {"sims", scores_json(s.sims)}});
  }
  return json{{"section_id", p.section_id},
              {"label", label_name(p.label)},
              {"sums", scores_json(p.sums)},
              {"tie", p.tie},
              {"sentences", sentences}};
}

namespace {

Label label_from(const json& j) {
  const auto label = parse_label(j.get<std::string>());
  if (!label) throw FormatError("unknown label '" + j.get<std::string>() + "'");
  return *label;
}

}  // namespace

SectionPrediction section_prediction_from_json(const json& j) {
  SectionPrediction p;
  j.at("section_id").get_to(p.section_id);
  p.label = label_from(j.at("label"));
  p.sums = scores_from_json(j.at("sums"));
  j.at("tie").get_to(p.tie);
  for (const auto& s : j.at("sentences")) {
    SentencePrediction sp;
    s.at("sentence_id").get_to(sp.sentence_id);
    sp.label = label_from(s.at("label"));
    sp.sims = scores_from_json(s.at("sims"));
    p.sentences.push_back(std::move(sp));
  }
  return p;
}

void save_predictions(const std::vector<SectionPrediction>& predictions, const std::filesystem::path& path) {
  std::string out;
  for (const auto& p : predictions) {
    out += to_json(p).dump();
    out += '\n';
  }
  write_file_atomic(path, out);
}

std::vector<SectionPrediction> load_predictions(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NotFound("cannot open predictions file " + path.string());
  std::vector<SectionPrediction> out;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) continue;
    try {
      out.push_back(section_prediction_from_json(json::parse(line)));
    } catch (const json::exception& e) {
      throw FormatError(path.string() + ":" + std::to_string(n) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace docadopt::adoptmap
