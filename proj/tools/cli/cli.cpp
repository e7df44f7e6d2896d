#include "cli/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <memory>
#include <optional>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>
#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include "docadopt/adoptmap/merge.hpp"
#include "docadopt/adoptmap/predict.hpp"
#include "docadopt/corpus/builder.hpp"
#include "docadopt/corpus/index.hpp"
#include "docadopt/corpus/store.hpp"
#include "docadopt/errors.hpp"
#include "docadopt/evalkit/groundtruth.hpp"
#include "docadopt/evalkit/sweep.hpp"
#include "docadopt/ingest/discover.hpp"
#include "docadopt/ingest/mirror.hpp"
#include "docadopt/ingest/sections.hpp"
#include "docadopt/mentor/mentor.hpp"
#include "docadopt/serialize.hpp"
#include "docadopt/service/service.hpp"
#include "docadopt/text.hpp"
#include "docadopt/topics/model.hpp"

namespace docadopt::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct EmbedOptions {
  embed::ProviderSettings settings;
  std::string cache_dir;

  void add(CLI::App& app) {
    app.add_option("--embed-kind", settings.kind, "Embedding provider: remote or hash")->capture_default_str();
    app.add_option("--embed-model", settings.model_id, "Embedding model id")->capture_default_str();
    app.add_option("--embed-url", settings.url, "Embedding server endpoint")->capture_default_str();
    app.add_option("--embed-seed", settings.seed, "Seed of the hash embedder")->capture_default_str();
    app.add_option("--embed-dim", settings.dim, "Dimension of the hash embedder")->capture_default_str();
    app.add_option("--embed-cache", cache_dir, "Directory for cached embeddings");
  }

  embed::ProviderSettings resolved() const {
    auto s = settings;
    if (!cache_dir.empty()) s.cache_dir = cache_dir;
    return s;
  }
};

struct ComponentOptions {
  std::string reducer = "umap";
  std::string clusterer = "hdbscan";
  double max_distance = 0.5;
  int min_samples = 0;
  int umap_epochs = 0;

  void add(CLI::App& app) {
    app.add_option("--reducer", reducer, "umap or truncate")->capture_default_str()->check(CLI::IsMember({"umap", "truncate"}));
    app.add_option("--clusterer", clusterer, "hdbscan or threshold")
        ->capture_default_str()
        ->check(CLI::IsMember({"hdbscan", "threshold"}));
    app.add_option("--max-distance", max_distance, "Distance cutoff of the threshold clusterer")->capture_default_str();
    app.add_option("--min-samples", min_samples, "HDBSCAN min_samples (0: min_cluster_size)")->capture_default_str();
    app.add_option("--umap-epochs", umap_epochs, "UMAP epochs (0: automatic)")->capture_default_str();
  }

  std::unique_ptr<topics::Reducer> make_reducer() const {
    if (reducer == "truncate") return std::make_unique<topics::TruncatingReducer>();
    topics::UmapReducer::Options o;
    o.n_epochs = umap_epochs;
    return std::make_unique<topics::UmapReducer>(o);
  }

  std::unique_ptr<topics::Clusterer> make_clusterer() const {
    if (clusterer == "threshold") return std::make_unique<topics::ThresholdClusterer>(max_distance);
    topics::HdbscanClusterer::Options o;
    o.min_samples = min_samples;
    return std::make_unique<topics::HdbscanClusterer>(o);
  }
};

struct ThresholdOptions {
  std::string file;
  std::optional<double> topics_similarity;
  std::optional<double> reduction_min_similarity;
  std::optional<int> representation_size;

  void add(CLI::App& app) {
    app.add_option("--thresholds", file, "Thresholds JSON file");
    app.add_option("--topics-similarity", topics_similarity, "Minimum topic/TOI similarity for merging");
    app.add_option("--reduction-min-similarity", reduction_min_similarity, "Minimum similarity for outlier reduction");
    app.add_option("--representation-size", representation_size, "Terms per merged topic representation");
  }

  adoptmap::Thresholds resolved() const {
    adoptmap::Thresholds t;
    if (!file.empty()) t = read_json(file).get<adoptmap::Thresholds>();
    if (topics_similarity) t.topics_similarity = *topics_similarity;
    if (reduction_min_similarity) t.reduction_min_similarity = *reduction_min_similarity;
    if (representation_size) t.topic_representation_size = *representation_size;
    t.validate();
    return t;
  }
};

struct LlmOptions {
  mentor::LlmSettings settings;

  void add(CLI::App& app) {
    app.add_option("--llm", settings.kind, "LLM provider: stub or chat")->capture_default_str();
    app.add_option("--llm-seed", settings.seed, "Seed of the stub provider")->capture_default_str();
    app.add_option("--llm-canned", settings.canned_path, "Canned replies for the stub provider (JSON)");
    app.add_option("--llm-model", settings.model_id, "Chat model id")->capture_default_str();
    app.add_option("--llm-base-url", settings.base_url, "Chat completions base URL")->capture_default_str();
    app.add_option("--llm-key-env", settings.api_key_env, "Environment variable holding the API key")
        ->capture_default_str();
  }
};

std::vector<adoptmap::ToiSpec> load_tois(const std::string& path) {
  if (path.empty()) return adoptmap::default_tois();
  auto tois = read_json(path).get<std::vector<adoptmap::ToiSpec>>();
  adoptmap::validate_tois(tois);
  return tois;
}

topics::PipelineConfig load_pipeline(const std::string& path) {
  topics::PipelineConfig c;
  if (!path.empty()) c = read_json(path).get<topics::PipelineConfig>();
  c.validate();
  return c;
}

void emit(std::ostream& out, const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    out << text;
    if (!text.empty() && text.back() != '\n') out << '\n';
  } else {
    write_file_atomic(path, text);
  }
}

std::string sections_jsonl(const std::vector<Section>& sections) {
  std::string out;
  for (const auto& s : sections) {
    json j = s;
    j["sentences"] = json::array();
    for (const auto& sentence : ingest::section_sentences(s)) j["sentences"].push_back(sentence.text);
    out += j.dump() + "\n";
  }
  return out;
}

/// Routes the default logger to `err` for the lifetime of one run, then
/// restores the previous logger, since `err` may not outlive the call.
class ScopedLogging {
 public:
  ScopedLogging(std::ostream& err, const std::string& level) : previous_(spdlog::default_logger()) {
    auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err);
    auto logger = std::make_shared<spdlog::logger>("docadopt", sink);
    logger->set_pattern("[%l] %v");
    logger->set_level(spdlog::level::from_str(level));
    spdlog::set_default_logger(logger);
  }
  ~ScopedLogging() { spdlog::set_default_logger(previous_); }
  ScopedLogging(const ScopedLogging&) = delete;
  ScopedLogging& operator=(const ScopedLogging&) = delete;

 private:
  std::shared_ptr<spdlog::logger> previous_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Documentation adoption toolkit: corpus construction, topic modeling, TOI prediction and term augmentation",
               "docadopt"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");
  std::string log_level = "info";
  app.add_option("--log-level", log_level, "trace, debug, info, warn, error or off")
      ->capture_default_str()
      ->check(CLI::IsMember({"trace", "debug", "info", "warn", "error", "off"}));

  std::function<void()> action;
  auto leaf = [](CLI::App* parent, const std::string& name, const std::string& description) {
    return parent->add_subcommand(name, description);
  };
  auto group = [&](const std::string& name, const std::string& description) {
    auto* g = app.add_subcommand(name, description);
    g->require_subcommand(1);
    return g;
  };

  // ingest
  auto* ingest = group("ingest", "Find projects, mirror their documentation, parse pages");

  std::vector<std::string> discover_domains;
  std::string discover_domain_file, discover_out, discover_cache = ".cache/github", discover_token_env = "GITHUB_TOKEN";
  std::size_t discover_limit = 10;
  auto* discover = leaf(ingest, "discover", "Top-starred repositories with hosted documentation per domain");
  discover->add_option("--domain", discover_domains, "OSS domain (repeatable)");
  discover->add_option("--domains", discover_domain_file, "File with one allowed domain per line")->required();
  discover->add_option("--limit", discover_limit, "Projects per domain")->capture_default_str();
  discover->add_option("--out", discover_out, "Output JSON file (default stdout)");
  discover->add_option("--cache", discover_cache, "Search response cache")->capture_default_str();
  discover->add_option("--token-env", discover_token_env, "Environment variable with a GitHub token")->capture_default_str();
  discover->callback([&] {
    action = [&] {
      const auto allowed = ingest::load_domain_list(discover_domain_file);
      auto domains = discover_domains.empty() ? allowed : discover_domains;
      const char* token = std::getenv(discover_token_env.c_str());
      auto http = net::make_http_client();
      ingest::GitHubSearchClient client(*http, token ? token : "", discover_cache);
      json projects = json::array();
      for (const auto& d : domains) {
        for (const auto& p : ingest::discover_projects(d, discover_limit, client, allowed)) projects.push_back(p);
      }
      emit(out, discover_out, projects.dump(2));
    };
  });

  std::string mirror_projects, mirror_out;
  std::vector<std::string> mirror_only;
  ingest::MirrorOptions mirror_options;
  int mirror_delay_ms = 0;
  auto* mirror = leaf(ingest, "mirror", "Mirror the documentation sites of discovered projects");
  mirror->add_option("--projects", mirror_projects, "Projects JSON from 'ingest discover'")->required();
  mirror->add_option("--project", mirror_only, "Only this repository id (repeatable)");
  mirror->add_option("--out", mirror_out, "Mirror root directory")->required();
  mirror->add_option("--max-pages", mirror_options.max_pages, "Page limit per project")->capture_default_str();
  mirror->add_option("--parallel", mirror_options.parallelism, "Concurrent fetches")->capture_default_str();
  mirror->add_option("--delay-ms", mirror_delay_ms, "Delay between requests per worker")->capture_default_str();
  mirror->callback([&] {
    action = [&] {
      mirror_options.delay = std::chrono::milliseconds(mirror_delay_ms);
      const auto projects = read_json(mirror_projects).get<std::vector<ProjectRef>>();
      auto http = net::make_http_client();
      std::size_t done = 0;
      for (const auto& p : projects) {
        if (!mirror_only.empty() && std::find(mirror_only.begin(), mirror_only.end(), p.repo_id) == mirror_only.end()) continue;
        try {
          const auto m = ingest::mirror_project(p, mirror_out, *http, mirror_options);
          out << p.repo_id << ": " << m.page_count << " pages, " << m.failures.size() << " failures\n";
          ++done;
        } catch (const Error& e) {
          err << "docadopt: " << p.repo_id << ": " << e.what() << "\n";
        }
      }
      if (done == 0) throw Error("no project was mirrored");
    };
  });

  std::string parse_mirror, parse_html, parse_out, parse_page_id = "page";
  auto* parse = leaf(ingest, "parse", "Extract sections from mirrored pages (JSON lines)");
  auto* parse_src = parse->add_option("--mirror", parse_mirror, "Mirror root directory");
  parse->add_option("--html", parse_html, "A single HTML file")->excludes(parse_src);
  parse->add_option("--page-id", parse_page_id, "Page id used with --html")->capture_default_str();
  parse->add_option("--out", parse_out, "Output file (default stdout)");
  parse->callback([&] {
    action = [&] {
      std::string text;
      if (!parse_html.empty()) {
        Page page;
        page.page_id = parse_page_id;
        page.raw_html = read_file(parse_html);
        text = sections_jsonl(ingest::extract_sections(page));
      } else if (!parse_mirror.empty()) {
        ingest::for_each_mirrored_page(parse_mirror, [&](Page&& page) { text += sections_jsonl(ingest::extract_sections(page)); });
      } else {
        throw InvalidArgument("give --mirror or --html");
      }
      emit(out, parse_out, text);
    };
  });

  // corpus
  auto* corpus_group = group("corpus", "Build the sentence corpus and the domain term index");
  std::string build_mirror, build_out;
  auto* build = leaf(corpus_group, "build", "Parse a mirror into a sealed corpus");
  build->add_option("--mirror", build_mirror, "Mirror root directory")->required();
  build->add_option("--out", build_out, "Corpus directory")->required();
  build->callback([&] {
    action = [&] {
      const auto store = corpus::build_from_mirror(build_mirror);
      corpus::save_corpus(store, build_out);
      out << "projects " << store.projects().size() << ", pages " << store.pages().size() << ", sections "
          << store.sections().size() << ", sentences " << store.sentences().size() << "\n";
    };
  });

  std::string index_corpus, index_out;
  auto* index_cmd = leaf(corpus_group, "index", "Per-domain term statistics for technical-term detection");
  index_cmd->add_option("--corpus", index_corpus, "Corpus directory")->required();
  index_cmd->add_option("--out", index_out, "Index file (default <corpus>/index.json)");
  index_cmd->callback([&] {
    action = [&] {
      const auto index = corpus::build_index(corpus::load_corpus(index_corpus));
      const fs::path path = index_out.empty() ? fs::path(index_corpus) / "index.json" : fs::path(index_out);
      corpus::save_index(index, path);
      out << "domains " << index.domain_count() << ", vocabulary " << index.vocabulary_size() << "\n";
    };
  });

  // topics
  auto* topics_group = group("topics", "Guided topic modeling over corpus sentences");
  std::string fit_corpus, fit_out, fit_config, fit_tois;
  EmbedOptions fit_embed;
  ComponentOptions fit_components;
  auto* fit = leaf(topics_group, "fit", "Fit a topic model");
  fit->add_option("--corpus", fit_corpus, "Corpus directory")->required();
  fit->add_option("--out", fit_out, "Model directory")->required();
  fit->add_option("--config", fit_config, "Pipeline config JSON (defaults otherwise)");
  fit->add_option("--tois", fit_tois, "TOI list JSON used as seeds (defaults otherwise)");
  fit_embed.add(*fit);
  fit_components.add(*fit);
  fit->callback([&] {
    action = [&] {
      const auto store = corpus::load_corpus(fit_corpus);
      const auto config = load_pipeline(fit_config);
      const auto tois = load_tois(fit_tois);
      embed::ProviderStack embedder(fit_embed.resolved());
      auto reducer = fit_components.make_reducer();
      auto clusterer = fit_components.make_clusterer();
      const auto model = topics::fit(store.sentences(), embedder.provider(), *reducer, *clusterer,
                                     adoptmap::seed_from_tois(tois), config);
      topics::save_model(model, fit_out);
      out << "topics " << model.topics.size() - 1 << ", sentences " << model.sentences->ids.size() << "\n";
    };
  });

  // adoptmap
  auto* adoptmap_group = group("adoptmap", "Merge topics onto TOIs and predict section labels");
  std::string merge_model, merge_out, merge_tois;
  EmbedOptions merge_embed;
  ThresholdOptions merge_thresholds;
  auto* merge = leaf(adoptmap_group, "merge", "Collapse a fitted topic model onto the TOI labels");
  merge->add_option("--model", merge_model, "Topic model directory")->required();
  merge->add_option("--out", merge_out, "Merged model directory")->required();
  merge->add_option("--tois", merge_tois, "TOI list JSON (defaults otherwise)");
  merge_embed.add(*merge);
  merge_thresholds.add(*merge);
  merge->callback([&] {
    action = [&] {
      const auto model = topics::load_model(merge_model);
      embed::ProviderStack embedder(merge_embed.resolved());
      const auto merged =
          adoptmap::build_merged_model(model, load_tois(merge_tois), embedder.provider(), merge_thresholds.resolved());
      adoptmap::save_merged(merged, merge_out);
      for (const auto label : adoptmap::kLabels) {
        out << adoptmap::label_name(label) << ": " << merged.topic(label).size() << " sentences\n";
      }
    };
  });

  std::string predict_model, predict_corpus, predict_out, predict_text;
  EmbedOptions predict_embed;
  auto* predict = leaf(adoptmap_group, "predict", "Label every corpus section, or one piece of text");
  predict->add_option("--model", predict_model, "Merged model directory")->required();
  auto* predict_corpus_opt = predict->add_option("--corpus", predict_corpus, "Corpus directory");
  predict->add_option("--text", predict_text, "Ad-hoc text instead of a corpus")->excludes(predict_corpus_opt);
  predict->add_option("--out", predict_out, "Output JSON lines (default stdout)");
  predict_embed.add(*predict);
  predict->callback([&] {
    action = [&] {
      const auto merged = adoptmap::load_merged(predict_model);
      embed::ProviderStack embedder(predict_embed.resolved());
      if (!predict_text.empty()) {
        emit(out, predict_out, adoptmap::to_json(adoptmap::predict_text(predict_text, merged, embedder.provider())).dump());
        return;
      }
      if (predict_corpus.empty()) throw InvalidArgument("give --corpus or --text");
      const auto predictions = adoptmap::predict_corpus(corpus::load_corpus(predict_corpus), merged, embedder.provider());
      if (predict_out.empty()) {
        for (const auto& p : predictions) out << adoptmap::to_json(p).dump() << "\n";
      } else {
        adoptmap::save_predictions(predictions, predict_out);
      }
    };
  });

  // mentor
  auto* mentor_group = group("mentor", "Technical-term augmentation of documentation paragraphs");
  std::string augment_domain, augment_in, augment_index, augment_corpus, augment_out;
  std::size_t augment_k = mentor::kDefaultDetectCount;
  LlmOptions augment_llm;
  auto* augment = leaf(mentor_group, "augment", "Detect, expand and explain the technical terms of a paragraph");
  augment->add_option("--domain", augment_domain, "OSS domain of the paragraph")->required();
  augment->add_option("--in", augment_in, "Paragraph text file")->required();
  auto* index_opt = augment->add_option("--index", augment_index, "Domain index file");
  augment->add_option("--corpus", augment_corpus, "Corpus directory holding index.json")->excludes(index_opt);
  augment->add_option("-k,--detect", augment_k, "Detected terms per paragraph")->capture_default_str();
  augment->add_option("--out", augment_out, "Output JSON (default stdout)");
  augment_llm.add(*augment);
  augment->callback([&] {
    action = [&] {
      const std::string paragraph(trim(read_file(augment_in)));
      fs::path index_path = augment_index;
      if (index_path.empty()) {
        if (augment_corpus.empty()) throw InvalidArgument("give --index or --corpus");
        index_path = fs::path(augment_corpus) / "index.json";
      }
      const auto index = corpus::load_index(index_path);
      auto llm = mentor::make_llm(augment_llm.settings);
      const auto a = mentor::augment(paragraph, augment_domain, index, *llm, augment_k);
      if (a.degraded) err << "docadopt: warning: degraded augmentation\n";
      emit(out, augment_out, mentor::to_json(a).dump(2));
    };
  });

  // eval
  auto* eval_group = group("eval", "Score predictions against groundtruth and sweep hyperparameters");
  std::string run_model, run_corpus, run_gold, run_predictions, run_json;
  EmbedOptions run_embed;
  auto* eval_run = leaf(eval_group, "run", "Weighted precision, recall and F1 of a merged model");
  eval_run->add_option("--gold", run_gold, "Groundtruth CSV")->required();
  eval_run->add_option("--model", run_model, "Merged model directory");
  eval_run->add_option("--corpus", run_corpus, "Corpus directory");
  eval_run->add_option("--predictions", run_predictions, "Existing predictions (skips --model/--corpus)");
  eval_run->add_option("--json", run_json, "Also write the report as JSON");
  run_embed.add(*eval_run);
  eval_run->callback([&] {
    action = [&] {
      const auto gold = evalkit::load_groundtruth(run_gold);
      std::vector<adoptmap::SectionPrediction> predictions;
      if (!run_predictions.empty()) {
        predictions = adoptmap::load_predictions(run_predictions);
      } else {
        if (run_model.empty() || run_corpus.empty()) throw InvalidArgument("give --predictions, or --model and --corpus");
        const auto merged = adoptmap::load_merged(run_model);
        embed::ProviderStack embedder(run_embed.resolved());
        predictions = adoptmap::predict_corpus(corpus::load_corpus(run_corpus), merged, embedder.provider());
      }
      const auto report = evalkit::evaluate(predictions, gold);
      out << evalkit::format_table(report);
      if (!run_json.empty()) write_json(run_json, evalkit::to_json(report));
    };
  });

  std::string sweep_grid, sweep_corpus, sweep_gold, sweep_tois, sweep_out;
  std::size_t sweep_parallel = 1;
  EmbedOptions sweep_embed;
  ComponentOptions sweep_components;
  auto* eval_sweep = leaf(eval_group, "sweep", "One-at-a-time hyperparameter sweep");
  eval_sweep->add_option("--grid", sweep_grid, "Grid JSON ({grid, fixed})")->required();
  eval_sweep->add_option("--corpus", sweep_corpus, "Corpus directory")->required();
  eval_sweep->add_option("--gold", sweep_gold, "Groundtruth CSV")->required();
  eval_sweep->add_option("--tois", sweep_tois, "TOI list JSON (defaults otherwise)");
  eval_sweep->add_option("--out", sweep_out, "Write the rows as JSON");
  eval_sweep->add_option("--parallel", sweep_parallel, "Rows evaluated concurrently")->capture_default_str();
  sweep_embed.add(*eval_sweep);
  sweep_components.add(*eval_sweep);
  eval_sweep->callback([&] {
    action = [&] {
      const auto grid = evalkit::load_grid(sweep_grid);
      const auto store = corpus::load_corpus(sweep_corpus);
      embed::ProviderStack embedder(sweep_embed.resolved());
      evalkit::PipelineEvaluator evaluator(
          store, evalkit::load_groundtruth(sweep_gold), load_tois(sweep_tois), embedder.provider(),
          [&] { return sweep_components.make_reducer(); }, [&] { return sweep_components.make_clusterer(); });
      const auto rows = evalkit::sweep(grid.grid, grid.fixed, evaluator, sweep_parallel);
      out << evalkit::format_table(rows);
      if (!sweep_out.empty()) write_json(sweep_out, evalkit::to_json(rows));
    };
  });

  // serve
  std::string serve_config;
  std::optional<std::string> serve_host, serve_corpus, serve_model, serve_index, serve_predictions, serve_embed_kind,
      serve_llm_kind;
  std::optional<int> serve_port;
  std::vector<std::string> serve_cors;
  auto* serve = app.add_subcommand("serve", "Read-only HTTP API over built artifacts");
  serve->add_option("--config", serve_config, "Service config JSON");
  serve->add_option("--host", serve_host, "Bind address");
  serve->add_option("--port", serve_port, "Port");
  serve->add_option("--corpus", serve_corpus, "Corpus directory");
  serve->add_option("--model", serve_model, "Merged model directory");
  serve->add_option("--index", serve_index, "Domain index file");
  serve->add_option("--predictions", serve_predictions, "Precomputed predictions");
  serve->add_option("--embed-kind", serve_embed_kind, "Embedding provider kind");
  serve->add_option("--llm", serve_llm_kind, "LLM provider kind");
  serve->add_option("--cors", serve_cors, "Allowed origin (repeatable, '*' for any)");
  serve->callback([&] {
    action = [&] {
      service::ServiceConfig config;
      if (!serve_config.empty()) config = service::service_config_from_json(read_json(serve_config));
      service::apply_env(config, [](const char* name) { return std::getenv(name); });
      if (serve_host) config.host = *serve_host;
      if (serve_port) config.port = *serve_port;
      if (serve_corpus) config.corpus_dir = *serve_corpus;
      if (serve_model) config.model_dir = *serve_model;
      if (serve_index) config.index_path = *serve_index;
      if (serve_predictions) config.predictions_path = *serve_predictions;
      if (serve_embed_kind) config.provider.kind = *serve_embed_kind;
      if (serve_llm_kind) config.llm.kind = *serve_llm_kind;
      if (!serve_cors.empty()) config.cors_allowlist = serve_cors;
      service::Service svc(config);
      service::HttpServer server(svc.api(), svc.config().cors_allowlist);
      server.run(svc.config().host, svc.config().port);
    };
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (app.exit(e, out, err) == 0) return 0;
    err << app.help();
    return 2;
  }

  const ScopedLogging logging(err, log_level);
  try {
    if (!action) throw InvalidArgument("nothing to do");
    action();
  } catch (const std::exception& e) {
    err << "docadopt: error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace docadopt::cli
