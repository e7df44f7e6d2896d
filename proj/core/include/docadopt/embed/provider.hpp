#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "docadopt/embed/vector.hpp"
#include "docadopt/net/http.hpp"

namespace docadopt::embed {

inline constexpr const char* kDefaultModelId = "all-MiniLM-L6-v2";

struct ModelInfo {
  const char* model_id;
  std::size_t dim;
};

/// Sentence encoders selectable by configuration, default first.
inline constexpr ModelInfo kKnownModels[] = {
    {"all-MiniLM-L6-v2", 384},
    {"all-MiniLM-L12-v2", 384},
    {"all-mpnet-base-v2", 768},
};

/// Embedding provider contract: deterministic for a fixed model_id, every
/// output has exactly dim() finite components, output order follows input.
/// Implementations are safe for concurrent embed() calls.
class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;
  virtual const std::string& model_id() const = 0;
  virtual std::size_t dim() const = 0;
  virtual std::vector<Vector> embed(const std::vector<std::string>& texts) = 0;

  Vector embed_one(const std::string& text);
};

/// Bag-of-tokens hash projection. Each token (stop words removed) adds 1 to
/// `buckets_per_token` coordinates drawn from a splitmix64 stream seeded by
/// fnv1a64(token) ^ seed; the sum is L2-normalized. All components are
/// non-negative, texts sharing tokens overlap, disjoint texts overlap only
/// through bucket collisions.
class HashEmbedder final : public EmbeddingProvider {
 public:
  struct Options {
    std::uint64_t seed = 42;
    std::size_t dim = 384;
    std::size_t buckets_per_token = 4;
    std::size_t max_tokens = 256;
  };

  HashEmbedder() : HashEmbedder(Options{}) {}
  explicit HashEmbedder(Options options);

  const std::string& model_id() const override { return model_id_; }
  std::size_t dim() const override { return options_.dim; }
  std::vector<Vector> embed(const std::vector<std::string>& texts) override;

  const Options& options() const { return options_; }

 private:
  Options options_;
  std::string model_id_;
};

std::uint64_t splitmix64(std::uint64_t& state);

/// Client for a one-endpoint embedding service:
/// POST {"model_id": ..., "texts": [...]} -> {"vectors": [[...], ...]}.
class RemoteEmbedder final : public EmbeddingProvider {
 public:
  RemoteEmbedder(net::HttpClient& http, std::string url, std::string model_id, std::size_t dim,
                 std::size_t batch_size = 64);

  const std::string& model_id() const override { return model_id_; }
  std::size_t dim() const override { return dim_; }
  std::vector<Vector> embed(const std::vector<std::string>& texts) override;

 private:
  net::HttpClient& http_;
  std::string url_;
  std::string model_id_;
  std::size_t dim_;
  std::size_t batch_size_;
};

/// Disk cache in front of another provider. Layout:
/// `<dir>/<model_id>/<first two hex digits>/<fnv1a64(text) hex>.vec`, each file
/// a little-endian u64 dimension followed by float64 components.
class CachedEmbedder final : public EmbeddingProvider {
 public:
  CachedEmbedder(EmbeddingProvider& inner, std::filesystem::path dir);

  const std::string& model_id() const override { return inner_.model_id(); }
  std::size_t dim() const override { return inner_.dim(); }
  std::vector<Vector> embed(const std::vector<std::string>& texts) override;

  std::size_t hits() const { return hits_; }
  std::size_t misses() const { return misses_; }

 private:
  std::filesystem::path path_for(const std::string& text) const;

  EmbeddingProvider& inner_;
  std::filesystem::path dir_;
  std::mutex write_mutex_;
  std::size_t hits_ = 0;
  std::size_t misses_ = 0;
};

/// Configuration-level provider choice. kind is "hash" or "remote".
struct ProviderSettings {
  std::string kind = "remote";
  std::string model_id = kDefaultModelId;
  std::string url = "http://127.0.0.1:8089/embed";
  std::uint64_t seed = 42;
  std::size_t dim = 384;
  std::filesystem::path cache_dir;

  bool operator==(const ProviderSettings&) const = default;
};

void to_json(nlohmann::json& j, const ProviderSettings& s);
void from_json(const nlohmann::json& j, ProviderSettings& s);

/// Owns the provider stack described by settings (cache wrapper included).
class ProviderStack {
 public:
  explicit ProviderStack(const ProviderSettings& settings);
  ~ProviderStack();
  EmbeddingProvider& provider() { return *top_; }

 private:
  std::unique_ptr<net::HttpClient> http_;
  std::unique_ptr<EmbeddingProvider> base_;
  std::unique_ptr<EmbeddingProvider> cache_;
  EmbeddingProvider* top_ = nullptr;
};

}  // namespace docadopt::embed
