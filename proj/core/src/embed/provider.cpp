#include "docadopt/embed/provider.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <optional>

#include <nlohmann/json.hpp>
#include <spdlog/spdlog.h>

#include "docadopt/errors.hpp"
#include "docadopt/text.hpp"

namespace docadopt::embed {

namespace fs = std::filesystem;
using nlohmann::json;

Vector EmbeddingProvider::embed_one(const std::string& text) { return std::move(embed({text}).front()); }

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

HashEmbedder::HashEmbedder(Options options) : options_(options) {
  if (options_.dim == 0 || options_.buckets_per_token == 0) {
    throw InvalidArgument("hash embedder needs positive dim and buckets_per_token");
  }
  model_id_ = "hash-" + std::to_string(options_.dim) + "-s" + std::to_string(options_.seed);
}

std::vector<Vector> HashEmbedder::embed(const std::vector<std::string>& texts) {
  std::vector<Vector> out;
  out.reserve(texts.size());
  for (const auto& text : texts) {
    auto tokens = tokenize(text);
    if (tokens.size() > options_.max_tokens) {
      spdlog::warn("hash embedder: text of {} tokens truncated to {}", tokens.size(), options_.max_tokens);
      tokens.resize(options_.max_tokens);
    }
    Vector v(options_.dim, 0.0);
    for (const auto& token : tokens) {
      std::uint64_t state = fnv1a64(token) ^ options_.seed;
      for (std::size_t b = 0; b < options_.buckets_per_token; ++b) v[splitmix64(state) % options_.dim] += 1.0;
    }
    out.push_back(normalized(std::move(v)));
  }
  return out;
}

RemoteEmbedder::RemoteEmbedder(net::HttpClient& http, std::string url, std::string model_id, std::size_t dim,
                               std::size_t batch_size)
    : http_(http), url_(std::move(url)), model_id_(std::move(model_id)), dim_(dim), batch_size_(batch_size) {
  if (batch_size_ == 0) batch_size_ = 1;
}

std::vector<Vector> RemoteEmbedder::embed(const std::vector<std::string>& texts) {
  std::vector<Vector> out;
  out.reserve(texts.size());
  for (std::size_t start = 0; start < texts.size(); start += batch_size_) {
    const auto end = std::min(texts.size(), start + batch_size_);
    json request = {{"model_id", model_id_},
                    {"texts", std::vector<std::string>(texts.begin() + static_cast<std::ptrdiff_t>(start),
                                                       texts.begin() + static_cast<std::ptrdiff_t>(end))}};
    const auto response = http_.post_json(url_, request.dump());
    if (!response.ok()) throw RetriableError("embedding service returned HTTP " + std::to_string(response.status));
    json body;
    try {
      body = json::parse(response.body);
    } catch (const json::parse_error& e) {
      throw Error(std::string("embedding service returned malformed JSON: ") + e.what());
    }
    const auto& vectors = body.at("vectors");
    if (vectors.size() != end - start) throw Error("embedding service returned the wrong number of vectors");
    for (const auto& row : vectors) {
      auto v = row.get<Vector>();
      if (v.size() != dim_) {
        throw Error("embedding service returned dimension " + std::to_string(v.size()) + ", expected " +
                    std::to_string(dim_));
      }
      for (const double x : v) {
        if (!std::isfinite(x)) throw Error("embedding service returned a non-finite component");
      }
      out.push_back(std::move(v));
    }
  }
  return out;
}

CachedEmbedder::CachedEmbedder(EmbeddingProvider& inner, fs::path dir) : inner_(inner), dir_(std::move(dir)) {}

fs::path CachedEmbedder::path_for(const std::string& text) const {
  const auto key = hex64(fnv1a64(text));
  return dir_ / inner_.model_id() / key.substr(0, 2) / (key + ".vec");
}

namespace {

std::optional<Vector> read_vec(const fs::path& path, std::size_t dim) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::uint64_t stored = 0;
  in.read(reinterpret_cast<char*>(&stored), sizeof stored);
  if (!in || stored != dim) return std::nullopt;
  Vector v(dim);
  in.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(dim * sizeof(double)));
  if (!in) return std::nullopt;
  return v;
}

void write_vec(const fs::path& path, const Vector& v) {
  static_assert(std::endian::native == std::endian::little, "cache files are little-endian");
  fs::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    const std::uint64_t dim = v.size();
    out.write(reinterpret_cast<const char*>(&dim), sizeof dim);
    out.write(reinterpret_cast<const char*>(v.data()), static_cast<std::streamsize>(v.size() * sizeof(double)));
  }
  fs::rename(tmp, path);
}

}  // namespace

std::vector<Vector> CachedEmbedder::embed(const std::vector<std::string>& texts) {
  std::vector<Vector> out(texts.size());
  std::vector<std::string> missing;
  std::vector<std::size_t> missing_pos;
  for (std::size_t i = 0; i < texts.size(); ++i) {
    if (auto v = read_vec(path_for(texts[i]), dim())) {
      out[i] = std::move(*v);
    } else {
      missing.push_back(texts[i]);
      missing_pos.push_back(i);
    }
  }
  if (!missing.empty()) {
    auto fresh = inner_.embed(missing);
    std::lock_guard lock(write_mutex_);
    for (std::size_t j = 0; j < fresh.size(); ++j) {
      write_vec(path_for(missing[j]), fresh[j]);
      out[missing_pos[j]] = std::move(fresh[j]);
    }
  }
  std::lock_guard lock(write_mutex_);
  hits_ += texts.size() - missing.size();
  misses_ += missing.size();
  return out;
}

void to_json(nlohmann::json& j, const ProviderSettings& s) {
  j = nlohmann::json{{"kind", s.kind},           {"model_id", s.model_id}, {"url", s.url},
                     {"seed", s.seed},           {"dim", s.dim},           {"cache_dir", s.cache_dir.string()}};
}

void from_json(const nlohmann::json& j, ProviderSettings& s) {
  s.kind = j.value("kind", s.kind);
  s.model_id = j.value("model_id", s.model_id);
  s.url = j.value("url", s.url);
  s.seed = j.value("seed", s.seed);
  s.dim = j.value("dim", s.dim);
  s.cache_dir = j.value("cache_dir", s.cache_dir.string());
}

ProviderStack::ProviderStack(const ProviderSettings& settings) {
  if (settings.kind == "hash") {
    HashEmbedder::Options options;
    options.seed = settings.seed;
    options.dim = settings.dim;
    base_ = std::make_unique<HashEmbedder>(options);
  } else if (settings.kind == "remote") {
    http_ = net::make_http_client();
    std::size_t dim = settings.dim;
    for (const auto& m : kKnownModels) {
      if (settings.model_id == m.model_id) dim = m.dim;
    }
    base_ = std::make_unique<RemoteEmbedder>(*http_, settings.url, settings.model_id, dim);
  } else {
    throw InvalidArgument("unknown embedding provider kind '" + settings.kind + "' (expected hash or remote)");
  }
  top_ = base_.get();
  if (!settings.cache_dir.empty()) {
    cache_ = std::make_unique<CachedEmbedder>(*base_, settings.cache_dir);
    top_ = cache_.get();
  }
}

ProviderStack::~ProviderStack() = default;

}  // namespace docadopt::embed
