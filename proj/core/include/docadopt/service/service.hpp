#pragma once

#include <atomic>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "docadopt/adoptmap/merge.hpp"
#include "docadopt/adoptmap/predict.hpp"
#include "docadopt/corpus/index.hpp"
#include "docadopt/corpus/store.hpp"
#include "docadopt/embed/provider.hpp"
#include "docadopt/mentor/llm.hpp"
#include "docadopt/rate_limit.hpp"

namespace docadopt::service {

struct ServiceConfig {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::filesystem::path corpus_dir;
  std::filesystem::path model_dir;         // merged model
  std::filesystem::path index_path;        // default: <corpus_dir>/index.json
  std::filesystem::path predictions_path;  // default: computed at startup
  adoptmap::Thresholds thresholds;
  embed::ProviderSettings provider;
  mentor::LlmSettings llm;
  std::vector<std::string> cors_allowlist;
  double augment_per_minute = 30.0;
  std::size_t detect_count = 5;

  /// Paths exist, thresholds valid, port in range. Throws InvalidArgument / NotFound.
  void validate() const;
};

nlohmann::json to_json(const ServiceConfig& c);
/// Missing keys keep defaults; unknown keys are rejected.
ServiceConfig service_config_from_json(const nlohmann::json& j);

using EnvLookup = std::function<const char*(const char*)>;

/// Applies DOCADOPT_* variables (HOST, PORT, CORPUS, MODEL, INDEX,
/// PREDICTIONS, EMBED_KIND, EMBED_URL, EMBED_MODEL, EMBED_CACHE, LLM_KIND,
/// LLM_MODEL, LLM_BASE_URL, CORS, AUGMENT_RATE) on top of `config`.
void apply_env(ServiceConfig& config, const EnvLookup& env);

struct ApiResponse {
  int status = 200;
  nlohmann::json body;
};

/// Request handling independent of the HTTP transport. Read-only over the
/// artifacts it references; safe to call from several threads.
class Api {
 public:
  Api(const ServiceConfig& config, const corpus::CorpusStore& store, const adoptmap::MergedModel& merged,
      const corpus::DomainIndex& index, std::vector<adoptmap::SectionPrediction> predictions,
      embed::EmbeddingProvider& provider, mentor::LlmProvider& llm);

  ApiResponse health() const;
  ApiResponse projects() const;
  ApiResponse sections(const std::string& project_id, const std::optional<std::string>& label) const;
  ApiResponse predict(const std::string& body);
  ApiResponse augment(const std::string& body);

  const std::vector<adoptmap::SectionPrediction>& predictions() const { return predictions_; }

 private:
  const ServiceConfig& config_;
  const corpus::CorpusStore& store_;
  const adoptmap::MergedModel& merged_;
  const corpus::DomainIndex& index_;
  std::vector<adoptmap::SectionPrediction> predictions_;
  std::map<std::string, std::vector<std::size_t>> by_project_;
  embed::EmbeddingProvider& provider_;
  mentor::LlmProvider& llm_;
  std::mutex embed_mutex_;
  std::mutex llm_mutex_;
  RateLimiter augment_limiter_;
};

/// Artifacts loaded from a ServiceConfig plus the Api over them.
class Service {
 public:
  explicit Service(ServiceConfig config);
  ~Service();

  Api& api() { return *api_; }
  const ServiceConfig& config() const { return config_; }

 private:
  ServiceConfig config_;
  corpus::CorpusStore store_;
  adoptmap::MergedModel merged_;
  corpus::DomainIndex index_;
  std::unique_ptr<embed::ProviderStack> embedder_;
  std::unique_ptr<mentor::LlmProvider> llm_;
  std::unique_ptr<Api> api_;
};

/// HTTP binding of an Api. CORS headers are added for allow-listed origins
/// ("*" allows any).
class HttpServer {
 public:
  HttpServer(Api& api, std::vector<std::string> cors_allowlist);
  ~HttpServer();

  /// Binds (port 0 picks a free port) and serves on a background thread.
  int start(const std::string& host, int port);
  /// Binds and serves on the calling thread until stop().
  void run(const std::string& host, int port);
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  std::thread thread_;
};

}  // namespace docadopt::service
