#include "docadopt/topics/model.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <map>

#include <spdlog/spdlog.h>

#include "docadopt/errors.hpp"
#include "docadopt/serialize.hpp"

namespace docadopt::topics {

namespace fs = std::filesystem;
using nlohmann::json;

void SentenceTable::build_index() {
  index_.clear();
  for (std::size_t i = 0; i < ids.size(); ++i) index_.emplace(ids[i], i);
}

std::size_t SentenceTable::position(const std::string& sentence_id) const {
  const auto it = index_.find(sentence_id);
  if (it == index_.end()) throw NotFound("sentence " + sentence_id + " is not in the model");
  return it->second;
}

const Topic& TopicModel::topic(int topic_id) const { return topics.at(topic_row(topic_id)); }

std::size_t TopicModel::topic_row(int topic_id) const {
  for (std::size_t i = 0; i < topics.size(); ++i) {
    if (topics[i].topic_id == topic_id) return i;
  }
  throw NotFound("topic " + std::to_string(topic_id) + " is not in the model");
}

bool TopicModel::operator==(const TopicModel& o) const {
  const bool same_sentences = sentences == o.sentences || (sentences && o.sentences && *sentences == *o.sentences);
  return config == o.config && model_id == o.model_id && reducer == o.reducer && clusterer == o.clusterer &&
         seed == o.seed && seed_terms == o.seed_terms && vectorizer.vocabulary() == o.vectorizer.vocabulary() &&
         vectorizer.tokenizer() == o.vectorizer.tokenizer() && vectorizer.ngram_len() == o.vectorizer.ngram_len() &&
         topics == o.topics && ctfidf == o.ctfidf && same_sentences && assignments == o.assignments;
}

namespace {

std::string config_summary(const PipelineConfig& c, const std::string& clusterer) {
  return "min_cluster_size=" + std::to_string(c.min_cluster_size) + ", n_neighbors=" + std::to_string(c.n_neighbors) +
         ", n_components=" + std::to_string(c.n_components) + ", min_dist=" + std::to_string(c.min_dist) +
         ", clusterer=" + clusterer;
}

// Topic list, c-TF-IDF rows and embeddings from assignments over the table.
void assemble_topics(TopicModel& model, const std::vector<int>& assignments) {
  const auto& table = *model.sentences;
  std::map<int, std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < assignments.size(); ++i) members[assignments[i]].push_back(i);

  model.topics.clear();
  std::vector<int> rows(assignments.size(), -1);
  for (const auto& [id, idx] : members) {
    Topic t;
    t.topic_id = id;
    t.size = idx.size();
    std::vector<embed::Vector> vecs;
    for (const auto i : idx) {
      t.member_sentence_ids.push_back(table.ids[i]);
      vecs.push_back(table.embeddings[i]);
      rows[i] = static_cast<int>(model.topics.size());
    }
    t.embedding = embed::mean(vecs);
    model.topics.push_back(std::move(t));
  }

  const auto n_terms = model.vectorizer.vocabulary().size();
  auto counts = group_counts(table.counts, rows, model.topics.size(), n_terms);
  std::vector<std::size_t> nonzero;
  Matrix dense;
  for (std::size_t r = 0; r < counts.size(); ++r) {
    if (std::any_of(counts[r].begin(), counts[r].end(), [](double x) { return x > 0.0; })) {
      nonzero.push_back(r);
      dense.push_back(counts[r]);
    } else {
      spdlog::warn("topic {} has no vocabulary terms; its representation is empty", model.topics[r].topic_id);
    }
  }
  auto weights = ctfidf(dense, model.config.reduce_frequent_words);
  apply_term_multiplier(weights, seed_term_ids(model.seed_terms, model.vectorizer), model.config.seed_multiplier);
  model.ctfidf.assign(model.topics.size(), std::vector<double>(n_terms, 0.0));
  for (std::size_t k = 0; k < nonzero.size(); ++k) model.ctfidf[nonzero[k]] = std::move(weights[k]);
}

void assemble_representations(TopicModel& model, embed::EmbeddingProvider& provider) {
  const auto& table = *model.sentences;
  TermEmbeddings term_embeddings(provider);
  const auto settings = representation_settings(model.config);
  for (std::size_t r = 0; r < model.topics.size(); ++r) {
    auto& topic = model.topics[r];
    TopicTerms input;
    input.ctfidf_row = model.ctfidf[r];
    input.topic_embedding = &topic.embedding;
    for (const auto& id : topic.member_sentence_ids) {
      const auto i = table.position(id);
      input.member_counts.push_back(&table.counts[i]);
      input.member_embeddings.push_back(&table.embeddings[i]);
    }
    topic.representation = represent(input, model.vectorizer.vocabulary(), settings, term_embeddings);
  }
}

}  // namespace

TopicModel fit(const std::vector<Sentence>& sentences, embed::EmbeddingProvider& provider, Reducer& reducer,
               Clusterer& clusterer, const SeedTopicSet& seed, const PipelineConfig& config) {
  config.validate();
  const auto needed = 2 * static_cast<std::size_t>(config.min_cluster_size);
  if (sentences.size() < needed) {
    throw InvalidArgument("topic fit needs at least " + std::to_string(needed) + " sentences (2 x min_cluster_size " +
                          std::to_string(config.min_cluster_size) + "), got " + std::to_string(sentences.size()));
  }

  auto table = std::make_shared<SentenceTable>();
  for (const auto& s : sentences) {
    table->ids.push_back(s.sentence_id);
    table->texts.push_back(s.text);
  }
  table->build_index();
  if (table->size() != sentences.size()) throw InvalidArgument("topic fit: duplicate sentence ids");

  spdlog::info("fit: embedding {} sentences with {}", sentences.size(), provider.model_id());
  table->embeddings = provider.embed(table->texts);
  for (auto& e : table->embeddings) {
    if (e.size() != provider.dim()) throw Error("embedding provider returned a vector of the wrong dimension");
    embed::round_to_float(e);
  }

  std::vector<embed::Vector> guided = table->embeddings;
  std::vector<std::string> seed_terms;
  if (!seed.empty()) {
    auto seeded = apply_seed(table->embeddings, seed, provider, config);
    const auto nudged = std::count_if(seeded.assigned.begin(), seeded.assigned.end(), [](const auto& a) { return a.has_value(); });
    spdlog::info("fit: seed guidance nudged {} of {} sentences", nudged, sentences.size());
    guided = std::move(seeded.embeddings);
    seed_terms = std::move(seeded.seed_terms);
  }

  spdlog::info("fit: reducing with {}", reducer.name());
  const auto reduced = reducer.reduce(guided, config);
  spdlog::info("fit: clustering with {}", clusterer.name());
  const auto labels = clusterer.cluster(reduced, config);
  if (labels.size() != sentences.size()) throw Error("clusterer returned the wrong number of labels");

  std::map<int, std::vector<std::size_t>> clusters;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] >= 0) clusters[labels[i]].push_back(i);
  }
  if (clusters.empty()) {
    throw Error("clustering produced no topics (" + config_summary(config, clusterer.name()) + ")");
  }
  std::vector<std::vector<std::size_t>> ordered;
  for (auto& [id, members] : clusters) {
    if (members.size() < static_cast<std::size_t>(config.min_cluster_size)) {
      throw Error("clusterer returned a cluster smaller than min_cluster_size");
    }
    ordered.push_back(std::move(members));
  }
  std::stable_sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() > b.size() : a.front() < b.front();
  });
  std::vector<int> assignments(sentences.size(), kOutlierTopic);
  for (std::size_t t = 0; t < ordered.size(); ++t) {
    for (const auto i : ordered[t]) assignments[i] = static_cast<int>(t);
  }

  TopicModel model;
  model.config = config;
  model.model_id = provider.model_id();
  model.reducer = reducer.name();
  model.clusterer = clusterer.name();
  model.seed = seed;
  model.seed_terms = std::move(seed_terms);
  model.vectorizer = Vectorizer(TokenizerConfig{config.stopwords_enabled, 2}, config.ngram_len, config.min_df);
  model.vectorizer.fit(table->texts);
  for (const auto& text : table->texts) table->counts.push_back(model.vectorizer.transform(text));
  model.sentences = table;
  model.assignments = assignments;

  assemble_topics(model, assignments);
  assemble_representations(model, provider);
  spdlog::info("fit: {} topics, {} outliers, vocabulary {}", ordered.size(),
               std::count(assignments.begin(), assignments.end(), kOutlierTopic), model.vectorizer.vocabulary().size());
  return model;
}

void write_matrix_block(const fs::path& path, const std::vector<std::vector<double>>& rows, std::size_t cols,
                        bool as_float32) {
  static_assert(std::endian::native == std::endian::little, "matrix blocks are little-endian");
  std::string out(as_float32 ? "DAEM" : "DACT");
  auto put = [&out](const void* p, std::size_t n) { out.append(static_cast<const char*>(p), n); };
  const std::uint32_t version = kModelFormatVersion;
  const std::uint64_t r = rows.size(), c = cols;
  put(&version, sizeof version);
  put(&r, sizeof r);
  put(&c, sizeof c);
  for (const auto& row : rows) {
    if (row.size() != cols) throw InvalidArgument("matrix block: ragged rows");
    for (const double x : row) {
      if (as_float32) {
        const float f = static_cast<float>(x);
        put(&f, sizeof f);
      } else {
        put(&x, sizeof x);
      }
    }
  }
  write_file_atomic(path, out);
}

std::vector<std::vector<double>> read_matrix_block(const fs::path& path, bool as_float32) {
  const auto data = read_file(path);
  const std::string magic = as_float32 ? "DAEM" : "DACT";
  constexpr std::size_t header = 4 + 4 + 8 + 8;
  if (data.size() < header || data.compare(0, 4, magic) != 0) throw FormatError(path.string() + ": bad header");
  std::uint32_t version = 0;
  std::uint64_t rows = 0, cols = 0;
  std::memcpy(&version, data.data() + 4, 4);
  std::memcpy(&rows, data.data() + 8, 8);
  std::memcpy(&cols, data.data() + 16, 8);
  if (version != kModelFormatVersion) throw VersionError(path.string(), static_cast<int>(version), kModelFormatVersion);
  const std::size_t width = as_float32 ? 4 : 8;
  if (cols != 0 && rows > (data.size() - header) / (cols * width)) throw FormatError(path.string() + ": truncated");
  if (data.size() != header + rows * cols * width) throw FormatError(path.string() + ": truncated or oversized");
  std::vector<std::vector<double>> out(rows, std::vector<double>(cols));
  const char* p = data.data() + header;
  for (auto& row : out) {
    for (auto& x : row) {
      if (as_float32) {
        float f;
        std::memcpy(&f, p, 4);
        x = f;
      } else {
        std::memcpy(&x, p, 8);
      }
      p += width;
    }
  }
  return out;
}

namespace {

json representation_json(const std::vector<TermWeight>& rep) {
  json out = json::array();
  for (const auto& [t, w] : rep) out.push_back({t, w});
  return out;
}

std::vector<TermWeight> representation_from(const json& j) {
  std::vector<TermWeight> out;
  for (const auto& e : j) out.emplace_back(e.at(0).get<std::string>(), e.at(1).get<double>());
  return out;
}

}  // namespace

void save_model(const TopicModel& model, const fs::path& dir) {
  fs::create_directories(dir);
  const auto& table = *model.sentences;
  const auto dim = table.embeddings.empty() ? 0 : table.embeddings.front().size();
  write_json(dir / "config.json", {{"format_version", kModelFormatVersion},
                                   {"model_id", model.model_id},
                                   {"reducer", model.reducer},
                                   {"clusterer", model.clusterer},
                                   {"pipeline", model.config},
                                   {"seed", model.seed},
                                   {"seed_terms", model.seed_terms},
                                   {"n_sentences", table.size()},
                                   {"n_topics", model.topics.size()},
                                   {"dim", dim}});
  const auto& tok = model.vectorizer.tokenizer();
  write_json(dir / "vocabulary.json",
             {{"tokenizer", {{"remove_stop_words", tok.remove_stop_words}, {"min_token_length", tok.min_token_length}}},
              {"ngram_len", model.vectorizer.ngram_len()},
              {"terms", model.vectorizer.vocabulary()}},
             -1);
  std::string topics;
  for (const auto& t : model.topics) {
    topics += json{{"topic_id", t.topic_id},
                   {"size", t.size},
                   {"member_sentence_ids", t.member_sentence_ids},
                   {"representation", representation_json(t.representation)}}
                  .dump();
    topics += '\n';
  }
  write_file_atomic(dir / "topics.jsonl", topics);
  std::string sentences;
  for (std::size_t i = 0; i < table.size(); ++i) {
    sentences += json{{"sentence_id", table.ids[i]}, {"text", table.texts[i]}, {"topic_id", model.assignments[i]}}.dump();
    sentences += '\n';
  }
  write_file_atomic(dir / "sentences.jsonl", sentences);
  write_matrix_block(dir / "embeddings.f32", table.embeddings, dim, true);
  write_matrix_block(dir / "ctfidf.f64", model.ctfidf, model.vectorizer.vocabulary().size(), false);
}

namespace {

std::vector<json> read_jsonl(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("missing model file " + path.string());
  std::vector<json> out;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) continue;
    try {
      out.push_back(json::parse(line));
    } catch (const json::parse_error& e) {
      throw FormatError(path.string() + ":" + std::to_string(n) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace

TopicModel load_model(const fs::path& dir) {
  if (!fs::exists(dir / "config.json")) throw NotFound("no topic model in " + dir.string());
  const auto config = read_json(dir / "config.json");
  try {
    const int version = config.at("format_version").get<int>();
    if (version != kModelFormatVersion) throw VersionError((dir / "config.json").string(), version, kModelFormatVersion);
    TopicModel model;
    config.at("pipeline").get_to(model.config);
    config.at("model_id").get_to(model.model_id);
    config.at("reducer").get_to(model.reducer);
    config.at("clusterer").get_to(model.clusterer);
    config.at("seed").get_to(model.seed);
    config.at("seed_terms").get_to(model.seed_terms);

    const auto vocab = read_json(dir / "vocabulary.json");
    TokenizerConfig tok{vocab.at("tokenizer").at("remove_stop_words"), vocab.at("tokenizer").at("min_token_length")};
    model.vectorizer = Vectorizer(tok, vocab.at("ngram_len"), model.config.min_df);
    model.vectorizer.set_vocabulary(vocab.at("terms").get<std::vector<std::string>>());

    auto table = std::make_shared<SentenceTable>();
    for (const auto& row : read_jsonl(dir / "sentences.jsonl")) {
      table->ids.push_back(row.at("sentence_id"));
      table->texts.push_back(row.at("text"));
      model.assignments.push_back(row.at("topic_id"));
    }
    if (table->size() != config.at("n_sentences").get<std::size_t>()) {
      throw FormatError((dir / "sentences.jsonl").string() + ": sentence count does not match config.json");
    }
    table->build_index();
    table->embeddings = read_matrix_block(dir / "embeddings.f32", true);
    if (table->embeddings.size() != table->size()) throw FormatError("embeddings.f32 row count does not match sentences");
    for (const auto& text : table->texts) table->counts.push_back(model.vectorizer.transform(text));
    model.sentences = table;

    for (const auto& row : read_jsonl(dir / "topics.jsonl")) {
      Topic t;
      row.at("topic_id").get_to(t.topic_id);
      row.at("size").get_to(t.size);
      row.at("member_sentence_ids").get_to(t.member_sentence_ids);
      t.representation = representation_from(row.at("representation"));
      if (t.size != t.member_sentence_ids.size()) throw FormatError("topic size does not match its member list");
      std::vector<embed::Vector> vecs;
      for (const auto& id : t.member_sentence_ids) vecs.push_back(table->embeddings[table->position(id)]);
      t.embedding = embed::mean(vecs);
      model.topics.push_back(std::move(t));
    }
    if (model.topics.size() != config.at("n_topics").get<std::size_t>()) {
      throw FormatError((dir / "topics.jsonl").string() + ": topic count does not match config.json");
    }
    model.ctfidf = read_matrix_block(dir / "ctfidf.f64", false);
    if (model.ctfidf.size() != model.topics.size()) throw FormatError("ctfidf.f64 row count does not match topics");
    return model;
  } catch (const json::exception& e) {
    throw FormatError(dir.string() + ": " + e.what());
  } catch (const NotFound& e) {
    throw FormatError(dir.string() + ": " + e.what());
  }
}

}  // namespace docadopt::topics
