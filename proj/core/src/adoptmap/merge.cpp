#include "docadopt/adoptmap/merge.hpp"

#include <algorithm>
#include <fstream>
#include <map>

#include <spdlog/spdlog.h>

#include "docadopt/errors.hpp"
#include "docadopt/serialize.hpp"

namespace docadopt::adoptmap {

topics::SeedTopicSet seed_from_tois(const std::vector<ToiSpec>& tois) {
  topics::SeedTopicSet out;
  for (const auto& t : tois) out.topics.push_back(topics::SeedTopic{t.name(), t.phrases});
  return out;
}

namespace fs = std::filesystem;
using nlohmann::json;

const std::vector<TopicMatch>* MergePlan::find(Label label) const {
  for (const auto& [l, matches] : entries) {
    if (l == label) return &matches;
  }
  return nullptr;
}

bool MergedModel::operator==(const MergedModel& o) const {
  const bool same_sentences = sentences == o.sentences || (sentences && o.sentences && sentences->same_rows(*o.sentences));
  return model_id == o.model_id && thresholds == o.thresholds && tois == o.tois && plan == o.plan &&
         topics == o.topics && same_sentences && assignments == o.assignments;
}

std::vector<TopicMatch> find_similar_topics(const topics::TopicModel& model, const ToiSpec& toi,
                                            embed::EmbeddingProvider& provider, const Thresholds& thresholds) {
  const auto query = provider.embed_one(toi.search_string());
  std::vector<TopicMatch> out;
  for (const auto& topic : model.topics) {
    if (topic.topic_id == topics::kOutlierTopic) continue;
    const double sim = embed::cosine(query, topic.embedding);
    if (sim >= thresholds.topics_similarity) out.push_back({topic.topic_id, sim});
  }
  std::sort(out.begin(), out.end(), [](const TopicMatch& a, const TopicMatch& b) { return a.topic_id < b.topic_id; });
  return out;
}

MergePlan resolve_conflicts(const MergePlan& plans) {
  // topic id -> (entry index, similarity) of the current owner
  std::map<int, std::pair<std::size_t, double>> owner;
  for (std::size_t e = 0; e < plans.entries.size(); ++e) {
    for (const auto& m : plans.entries[e].second) {
      const auto it = owner.find(m.topic_id);
      if (it == owner.end() || m.similarity > it->second.second) {
        owner[m.topic_id] = {e, m.similarity};
      } else if (m.similarity == it->second.second) {
        spdlog::info("merge: topic {} ties between {} and {} at {:.6f}; kept under {}", m.topic_id,
                     label_name(plans.entries[it->second.first].first), label_name(plans.entries[e].first),
                     m.similarity, label_name(plans.entries[it->second.first].first));
      }
    }
  }
  MergePlan out;
  for (std::size_t e = 0; e < plans.entries.size(); ++e) {
    std::vector<TopicMatch> kept;
    for (const auto& m : plans.entries[e].second) {
      if (owner.at(m.topic_id).first == e) kept.push_back(m);
    }
    out.entries.emplace_back(plans.entries[e].first, std::move(kept));
  }
  return out;
}

MergedModel merge(const topics::TopicModel& model, const MergePlan& plan, const std::vector<ToiSpec>& tois,
                  const Thresholds& thresholds) {
  validate_tois(tois);
  thresholds.validate();
  MergedModel merged;
  merged.model_id = model.model_id;
  merged.thresholds = thresholds;
  merged.tois = tois;
  merged.plan = plan;
  merged.sentences = model.sentences;
  for (const auto label : kLabels) merged.topics[label_index(label)].label = label;

  std::map<int, Label> owner;
  for (const auto& [label, matches] : plan.entries) {
    if (label == Label::Outlier) throw InvalidArgument("merge plan cannot target Outlier");
    for (const auto& m : matches) {
      if (!owner.emplace(m.topic_id, label).second) {
        throw InvalidArgument("merge plan lists topic " + std::to_string(m.topic_id) + " twice; resolve conflicts first");
      }
      model.topic(m.topic_id);
    }
  }

  const auto& table = *model.sentences;
  std::array<std::vector<embed::Vector>, kLabelCount> parts;
  std::array<std::vector<double>, kLabelCount> weights;
  for (const auto& topic : model.topics) {
    const auto it = owner.find(topic.topic_id);
    const auto label = it == owner.end() ? Label::Outlier : it->second;
    auto& target = merged.topics[label_index(label)];
    target.source_topics.push_back(topic.topic_id);
    for (const auto& id : topic.member_sentence_ids) target.members.push_back(table.position(id));
    if (topic.size > 0) {
      parts[label_index(label)].push_back(topic.embedding);
      weights[label_index(label)].push_back(static_cast<double>(topic.size));
    }
  }

  merged.assignments.assign(table.size(), Label::Outlier);
  for (auto& topic : merged.topics) {
    std::sort(topic.members.begin(), topic.members.end());
    for (const auto row : topic.members) merged.assignments[row] = topic.label;
    const auto i = label_index(topic.label);
    if (!parts[i].empty()) {
      topic.embedding = embed::mean(parts[i], weights[i]);
    } else if (topic.label != Label::Outlier) {
      spdlog::warn("merge: no topic cleared the similarity threshold for {}; it will never be predicted",
                   label_name(topic.label));
    }
  }
  return merged;
}

std::size_t reduce_outliers(MergedModel& merged, const Thresholds& thresholds) {
  const auto& table = *merged.sentences;
  auto& outliers = merged.topics[label_index(Label::Outlier)];
  std::vector<std::size_t> stay;
  std::size_t moved = 0;
  for (const auto row : outliers.members) {
    std::optional<Label> best;
    double best_sim = 0.0;
    for (const auto label : kLabels) {
      const auto& topic = merged.topic(label);
      if (label == Label::Outlier || !topic.embedding) continue;
      const double sim = embed::cosine(table.embeddings[row], *topic.embedding);
      if (!best || sim > best_sim) {
        best = label;
        best_sim = sim;
      }
    }
    if (best && best_sim >= thresholds.reduction_min_similarity) {
      merged.topics[label_index(*best)].members.push_back(row);
      merged.assignments[row] = *best;
      ++moved;
    } else {
      stay.push_back(row);
    }
  }
  outliers.members = std::move(stay);
  for (auto& topic : merged.topics) std::sort(topic.members.begin(), topic.members.end());
  spdlog::info("merge: outlier reduction moved {} sentences", moved);
  return moved;
}

void update_representations(MergedModel& merged, const topics::TopicModel& model, embed::EmbeddingProvider& provider) {
  const auto& table = *merged.sentences;
  std::vector<int> rows(table.size(), -1);
  for (const auto& topic : merged.topics) {
    for (const auto r : topic.members) rows[r] = static_cast<int>(label_index(topic.label));
  }
  const auto n_terms = model.vectorizer.vocabulary().size();
  auto counts = topics::group_counts(table.counts, rows, kLabelCount, n_terms);
  std::vector<std::size_t> nonzero;
  topics::Matrix dense;
  for (std::size_t r = 0; r < counts.size(); ++r) {
    if (std::any_of(counts[r].begin(), counts[r].end(), [](double x) { return x > 0.0; })) {
      nonzero.push_back(r);
      dense.push_back(counts[r]);
    }
  }
  auto weights = topics::ctfidf(dense, model.config.reduce_frequent_words);
  topics::apply_term_multiplier(weights, topics::seed_term_ids(model.seed_terms, model.vectorizer),
                                model.config.seed_multiplier);

  auto settings = topics::representation_settings(model.config);
  settings.chain = {topics::RepresentationStep::MMR, topics::RepresentationStep::KBI};
  settings.top_n = static_cast<std::size_t>(merged.thresholds.topic_representation_size);
  topics::TermEmbeddings term_embeddings(provider);
  for (auto& topic : merged.topics) topic.representation.clear();
  for (std::size_t k = 0; k < nonzero.size(); ++k) {
    auto& topic = merged.topics[nonzero[k]];
    topics::TopicTerms input;
    input.ctfidf_row = weights[k];
    input.topic_embedding = topic.embedding ? &*topic.embedding : nullptr;
    for (const auto r : topic.members) {
      input.member_counts.push_back(&table.counts[r]);
      input.member_embeddings.push_back(&table.embeddings[r]);
    }
    topic.representation = topics::represent(input, model.vectorizer.vocabulary(), settings, term_embeddings);
  }
}

MergedModel build_merged_model(const topics::TopicModel& model, const std::vector<ToiSpec>& tois,
                               embed::EmbeddingProvider& provider, const Thresholds& thresholds) {
  validate_tois(tois);
  thresholds.validate();
  if (provider.model_id() != model.model_id) {
    throw InvalidArgument("embedding provider " + provider.model_id() + " does not match the model's " + model.model_id);
  }
  MergePlan plans;
  for (const auto& toi : tois) plans.entries.emplace_back(toi.label, find_similar_topics(model, toi, provider, thresholds));
  auto merged = merge(model, resolve_conflicts(plans), tois, thresholds);
  reduce_outliers(merged, thresholds);
  update_representations(merged, model, provider);
  return merged;
}

namespace {

json plan_json(const MergePlan& plan) {
  json out = json::array();
  for (const auto& [label, matches] : plan.entries) {
    json m = json::array();
    for (const auto& match : matches) m.push_back({{"topic_id", match.topic_id}, {"similarity", match.similarity}});
    out.push_back({{"label", label_name(label)}, {"topics", m}});
  }
  return out;
}

MergePlan plan_from(const json& j) {
  MergePlan plan;
  for (const auto& e : j) {
    const auto label = parse_label(e.at("label").get<std::string>());
    if (!label) throw FormatError("unknown label in merge plan");
    std::vector<TopicMatch> matches;
    for (const auto& m : e.at("topics")) matches.push_back({m.at("topic_id"), m.at("similarity")});
    plan.entries.emplace_back(*label, std::move(matches));
  }
  return plan;
}

}  // namespace

void save_merged(const MergedModel& merged, const fs::path& dir) {
  fs::create_directories(dir);
  const auto& table = *merged.sentences;
  json topics = json::array();
  for (const auto& t : merged.topics) {
    json rep = json::array();
    for (const auto& [term, w] : t.representation) rep.push_back({term, w});
    std::vector<std::string> members;
    for (const auto r : t.members) members.push_back(table.ids[r]);
    topics.push_back({{"label", label_name(t.label)},
                      {"size", t.size()},
                      {"source_topics", t.source_topics},
                      {"embedding", t.embedding ? json(*t.embedding) : json(nullptr)},
                      {"representation", rep},
                      {"member_sentence_ids", members}});
  }
  write_json(dir / "merged.json", {{"format_version", kMergedFormatVersion},
                                   {"model_id", merged.model_id},
                                   {"thresholds", merged.thresholds},
                                   {"tois", merged.tois},
                                   {"plan", plan_json(merged.plan)},
                                   {"n_sentences", table.size()},
                                   {"topics", topics}});
  std::string lines;
  for (std::size_t i = 0; i < table.size(); ++i) {
    lines += json{{"sentence_id", table.ids[i]}, {"text", table.texts[i]}}.dump();
    lines += '\n';
  }
  write_file_atomic(dir / "sentences.jsonl", lines);
  const auto dim = table.embeddings.empty() ? 0 : table.embeddings.front().size();
  topics::write_matrix_block(dir / "embeddings.f32", table.embeddings, dim, true);
}

MergedModel load_merged(const fs::path& dir) {
  if (!fs::exists(dir / "merged.json")) throw NotFound("no merged model in " + dir.string());
  const auto j = read_json(dir / "merged.json");
  try {
    const int version = j.at("format_version").get<int>();
    if (version != kMergedFormatVersion) throw VersionError((dir / "merged.json").string(), version, kMergedFormatVersion);
    MergedModel merged;
    j.at("model_id").get_to(merged.model_id);
    j.at("thresholds").get_to(merged.thresholds);
    j.at("tois").get_to(merged.tois);
    merged.plan = plan_from(j.at("plan"));

    auto table = std::make_shared<topics::SentenceTable>();
    std::ifstream in(dir / "sentences.jsonl", std::ios::binary);
    if (!in) throw FormatError("missing " + (dir / "sentences.jsonl").string());
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const auto row = json::parse(line);
      table->ids.push_back(row.at("sentence_id"));
      table->texts.push_back(row.at("text"));
    }
    if (table->size() != j.at("n_sentences").get<std::size_t>()) {
      throw FormatError((dir / "sentences.jsonl").string() + ": sentence count does not match merged.json");
    }
    table->build_index();
    table->embeddings = topics::read_matrix_block(dir / "embeddings.f32", true);
    if (table->embeddings.size() != table->size()) throw FormatError("embeddings.f32 row count does not match sentences");

    merged.assignments.assign(table->size(), Label::Outlier);
    for (const auto& t : j.at("topics")) {
      const auto label = parse_label(t.at("label").get<std::string>());
      if (!label) throw FormatError("unknown label in merged.json");
      auto& topic = merged.topics[label_index(*label)];
      topic.label = *label;
      t.at("source_topics").get_to(topic.source_topics);
      if (!t.at("embedding").is_null()) topic.embedding = t.at("embedding").get<embed::Vector>();
      for (const auto& e : t.at("representation")) topic.representation.emplace_back(e.at(0), e.at(1));
      for (const auto& id : t.at("member_sentence_ids")) {
        const auto row = table->position(id.get<std::string>());
        topic.members.push_back(row);
        merged.assignments[row] = *label;
      }
      if (topic.size() != t.at("size").get<std::size_t>()) throw FormatError("merged topic size does not match members");
    }
    merged.sentences = table;
    return merged;
  } catch (const json::exception& e) {
    throw FormatError(dir.string() + ": " + e.what());
  } catch (const NotFound& e) {
    throw FormatError(dir.string() + ": " + e.what());
  }
}

}  // namespace docadopt::adoptmap
