#include "docadopt/mentor/llm.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

#include <spdlog/spdlog.h>

#include "docadopt/ingest/sentences.hpp"
#include "docadopt/ingest/url.hpp"
#include "docadopt/mentor/prompts.hpp"
#include "docadopt/serialize.hpp"
#include "docadopt/text.hpp"

namespace docadopt::mentor {

using nlohmann::json;

std::string prompt_key(const std::string& prompt) { return hex64(fnv1a64(prompt)); }

StubLlm::StubLlm(std::uint64_t seed, std::map<std::string, std::string> canned)
    : seed_(seed), canned_(std::move(canned)) {}

std::string StubLlm::model_id() const { return "stub-s" + std::to_string(seed_); }

void StubLlm::add_canned(const std::string& prompt, std::string reply) {
  canned_[prompt_key(prompt)] = std::move(reply);
}

void StubLlm::add_canned_by_key(const std::string& key, std::string reply) { canned_[key] = std::move(reply); }

std::string StubLlm::complete(const std::string& prompt) {
  if (const auto it = canned_.find(prompt_key(prompt)); it != canned_.end()) return it->second;
  return generate(prompt);
}

namespace {

std::uint64_t keyed_hash(const std::string& text, std::uint64_t seed) {
  return fnv1a64(text + '\x1f' + std::to_string(seed));
}

std::string first_sentence_with(const std::string& paragraph, const std::string& term) {
  for (const auto& s : ingest::split_sentences(paragraph)) {
    if (contains_on_token_boundary(s, term)) return s;
  }
  return "";
}

std::string clip(const std::string& text, std::size_t max_bytes) {
  if (text.size() <= max_bytes) return text;
  std::size_t cut = max_bytes;
  while (cut > 0 && (static_cast<unsigned char>(text[cut]) & 0xC0) == 0x80) --cut;
  return text.substr(0, cut) + "...";
}

}  // namespace

std::string StubLlm::generate(const std::string& prompt) const {
  const auto kind = prompt_kind(prompt);
  const auto paragraph = prompt_paragraph(prompt);
  if (kind == "expand") {
    std::set<std::string> known;
    for (const auto& t : prompt_list(prompt, "DETECTED:")) known.insert(to_lower(t));
    const auto tokens = tokenize(paragraph);
    std::vector<std::string> candidates;
    std::set<std::string> seen;
    auto consider = [&](const std::string& c) {
      if (known.count(c) || !seen.insert(c).second) return;
      if (contains_on_token_boundary(paragraph, c)) candidates.push_back(c);
    };
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (tokens[i].size() >= 5) consider(tokens[i]);
      if (i + 1 < tokens.size()) consider(tokens[i] + " " + tokens[i + 1]);
    }
    std::stable_sort(candidates.begin(), candidates.end(), [&](const auto& a, const auto& b) {
      return keyed_hash(a, seed_) < keyed_hash(b, seed_);
    });
    std::string reply = "TERMS:\n";
    for (std::size_t i = 0; i < std::min<std::size_t>(2, candidates.size()); ++i) reply += "- " + candidates[i] + "\n";
    return reply;
  }
  if (kind == "explain") {
    const auto domain = prompt_domain(prompt);
    std::string reply;
    for (const auto& term : prompt_list(prompt, "TERMS:")) {
      const auto h = keyed_hash(to_lower(term), seed_);
      const auto sentence = clip(first_sentence_with(paragraph, term), 160);
      reply += "TERM: " + term + "\n";
      reply += "EXPLANATION: In " + (domain.empty() ? std::string("this") : domain) + " documentation, \"" + term +
               "\" names a concept the surrounding text depends on.";
      if (!sentence.empty()) reply += " It appears in: \"" + sentence + "\"";
      reply += "\n";
      if (h & 1U && !sentence.empty()) reply += "EXAMPLES:\n- " + sentence + "\n";
      if (h & 2U) reply += "REFERENCES:\n- https://en.wikipedia.org/wiki/Special:Search?search=" + ingest::url_encode(term) + "\n";
      reply += "END\n";
    }
    return reply;
  }
  return "";
}

std::map<std::string, std::string> load_canned(const std::filesystem::path& path) {
  const auto j = read_json(path);
  if (!j.is_object()) throw FormatError(path.string() + ": canned replies must be a JSON object");
  std::map<std::string, std::string> out;
  for (const auto& [key, value] : j.items()) out[key] = value.get<std::string>();
  return out;
}

std::string ReplayLlm::complete(const std::string& prompt) {
  const auto it = by_prompt_.find(prompt);
  if (it == by_prompt_.end()) throw LlmError("replay: prompt " + prompt_key(prompt) + " was not recorded");
  if (it->second.error) throw LlmError(*it->second.error);
  return it->second.response.value_or("");
}

ChatCompletionsLlm::ChatCompletionsLlm(Options options, std::shared_ptr<net::HttpClient> http)
    : options_(std::move(options)), http_(std::move(http)) {
  if (const char* key = std::getenv(options_.api_key_env.c_str())) api_key_ = key;
  if (api_key_.empty()) spdlog::warn("llm: environment variable {} is not set", options_.api_key_env);
}

std::string ChatCompletionsLlm::redact(std::string text) const {
  if (api_key_.empty()) return text;
  for (auto pos = text.find(api_key_); pos != std::string::npos; pos = text.find(api_key_, pos)) {
    text.replace(pos, api_key_.size(), "[REDACTED]");
  }
  return text;
}

std::string ChatCompletionsLlm::complete(const std::string& prompt) {
  if (api_key_.empty()) throw LlmError("no API key in " + options_.api_key_env);
  const json body{{"model", options_.model_id},
                  {"messages", json::array({json{{"role", "user"}, {"content", prompt}}})},
                  {"temperature", options_.params.temperature},
                  {"max_tokens", options_.params.max_output_tokens}};
  auto url = options_.base_url;
  while (!url.empty() && url.back() == '/') url.pop_back();
  const auto response = http_->post_json(url + "/chat/completions", body.dump(), {{"Authorization", "Bearer " + api_key_}});
  spdlog::debug("llm: {} -> {} ({} bytes)", options_.model_id, response.status, response.body.size());
  if (!response.ok()) {
    throw LlmError("chat completions returned HTTP " + std::to_string(response.status) + ": " +
                   redact(response.body.substr(0, 300)));
  }
  try {
    const auto j = json::parse(response.body);
    return j.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const json::exception& e) {
    throw LlmError(std::string("chat completions reply is malformed: ") + e.what());
  }
}

json to_json(const LlmSettings& s) {
  return json{{"kind", s.kind},
              {"seed", s.seed},
              {"canned_path", s.canned_path},
              {"base_url", s.base_url},
              {"model_id", s.model_id},
              {"api_key_env", s.api_key_env},
              {"temperature", s.params.temperature},
              {"max_output_tokens", s.params.max_output_tokens}};
}

LlmSettings llm_settings_from_json(const json& j) {
  LlmSettings s;
  s.kind = j.value("kind", s.kind);
  s.seed = j.value("seed", s.seed);
  s.canned_path = j.value("canned_path", s.canned_path);
  s.base_url = j.value("base_url", s.base_url);
  s.model_id = j.value("model_id", s.model_id);
  s.api_key_env = j.value("api_key_env", s.api_key_env);
  s.params.temperature = j.value("temperature", s.params.temperature);
  s.params.max_output_tokens = j.value("max_output_tokens", s.params.max_output_tokens);
  return s;
}

std::unique_ptr<LlmProvider> make_llm(const LlmSettings& settings) {
  if (settings.kind == "stub") {
    return std::make_unique<StubLlm>(settings.seed,
                                     settings.canned_path.empty() ? std::map<std::string, std::string>{}
                                                                  : load_canned(settings.canned_path));
  }
  if (settings.kind == "chat") {
    ChatCompletionsLlm::Options o;
    o.base_url = settings.base_url;
    o.model_id = settings.model_id;
    o.api_key_env = settings.api_key_env;
    o.params = settings.params;
    return std::make_unique<ChatCompletionsLlm>(o, std::shared_ptr<net::HttpClient>(net::make_http_client()));
  }
  throw InvalidArgument("unknown llm kind '" + settings.kind + "' (expected stub or chat)");
}

}  // namespace docadopt::mentor
