#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "docadopt/errors.hpp"
#include "docadopt/net/http.hpp"

namespace docadopt::mentor {

struct GenerationParams {
  double temperature = 0.2;
  int max_output_tokens = 800;

  bool operator==(const GenerationParams&) const = default;
};

/// Raised by a provider that could not produce a reply.
class LlmError : public Error {
 public:
  using Error::Error;
};

class LlmProvider {
 public:
  virtual ~LlmProvider() = default;
  virtual std::string model_id() const = 0;
  virtual GenerationParams params() const = 0;
  /// Raw reply text. Throws LlmError (or RetriableError) on failure.
  virtual std::string complete(const std::string& prompt) = 0;
};

/// Hex FNV-1a of the prompt text, the key for canned replies.
std::string prompt_key(const std::string& prompt);

/// Offline provider. A canned reply is returned when one is registered for
/// the prompt; otherwise a reply is generated from the prompt itself, so the
/// output is a pure function of (prompt, seed, canned table).
class StubLlm final : public LlmProvider {
 public:
  explicit StubLlm(std::uint64_t seed = 42, std::map<std::string, std::string> canned = {});

  std::string model_id() const override;
  GenerationParams params() const override { return {0.0, 800}; }
  std::string complete(const std::string& prompt) override;

  void add_canned(const std::string& prompt, std::string reply);
  void add_canned_by_key(const std::string& key, std::string reply);
  const std::map<std::string, std::string>& canned() const { return canned_; }

 private:
  std::string generate(const std::string& prompt) const;

  std::uint64_t seed_;
  std::map<std::string, std::string> canned_;
};

/// Canned table file: JSON object {prompt_key: reply}.
std::map<std::string, std::string> load_canned(const std::filesystem::path& path);

/// Answers only prompts it has seen, with the recorded reply or error.
class ReplayLlm final : public LlmProvider {
 public:
  struct Entry {
    std::optional<std::string> response;
    std::optional<std::string> error;
  };

  ReplayLlm(std::string model_id, std::map<std::string, Entry> by_prompt)
      : model_id_(std::move(model_id)), by_prompt_(std::move(by_prompt)) {}

  std::string model_id() const override { return model_id_; }
  GenerationParams params() const override { return {}; }
  std::string complete(const std::string& prompt) override;

 private:
  std::string model_id_;
  std::map<std::string, Entry> by_prompt_;
};

/// OpenAI-style chat completions endpoint. The key is read from the named
/// environment variable at construction.
class ChatCompletionsLlm final : public LlmProvider {
 public:
  struct Options {
    std::string base_url = "https://api.openai.com/v1";
    std::string model_id = "gpt-3.5-turbo";
    std::string api_key_env = "OPENAI_API_KEY";
    GenerationParams params;
  };

  ChatCompletionsLlm(Options options, std::shared_ptr<net::HttpClient> http);

  std::string model_id() const override { return options_.model_id; }
  GenerationParams params() const override { return options_.params; }
  std::string complete(const std::string& prompt) override;

  /// Replaces every occurrence of the API key with "[REDACTED]".
  std::string redact(std::string text) const;

 private:
  Options options_;
  std::string api_key_;
  std::shared_ptr<net::HttpClient> http_;
};

struct LlmSettings {
  std::string kind = "stub";  // stub | chat
  std::uint64_t seed = 42;
  std::string canned_path;
  std::string base_url = "https://api.openai.com/v1";
  std::string model_id = "gpt-3.5-turbo";
  std::string api_key_env = "OPENAI_API_KEY";
  GenerationParams params;

  bool operator==(const LlmSettings&) const = default;
};

nlohmann::json to_json(const LlmSettings& s);
LlmSettings llm_settings_from_json(const nlohmann::json& j);

std::unique_ptr<LlmProvider> make_llm(const LlmSettings& settings);

}  // namespace docadopt::mentor
