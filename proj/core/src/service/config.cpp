#include "docadopt/service/service.hpp"

#include <set>

#include "docadopt/errors.hpp"

namespace docadopt::service {

using nlohmann::json;

void ServiceConfig::validate() const {
  if (port < 0 || port > 65535) throw InvalidArgument("service: port " + std::to_string(port) + " out of range");
  if (corpus_dir.empty()) throw InvalidArgument("service: corpus path is required");
  if (model_dir.empty()) throw InvalidArgument("service: model path is required");
  auto must_exist = [](const std::filesystem::path& p, const char* what) {
    if (!std::filesystem::exists(p)) throw NotFound(std::string("service: ") + what + " " + p.string() + " does not exist");
  };
  must_exist(corpus_dir, "corpus");
  must_exist(model_dir, "model");
  if (!index_path.empty()) must_exist(index_path, "index");
  if (!predictions_path.empty()) must_exist(predictions_path, "predictions");
  thresholds.validate();
  if (augment_per_minute < 0.0) throw InvalidArgument("service: augment_per_minute must be non-negative");
  if (detect_count == 0) throw InvalidArgument("service: detect_count must be at least 1");
}

json to_json(const ServiceConfig& c) {
  return json{{"host", c.host},
              {"port", c.port},
              {"corpus_dir", c.corpus_dir.string()},
              {"model_dir", c.model_dir.string()},
              {"index_path", c.index_path.string()},
              {"predictions_path", c.predictions_path.string()},
              {"thresholds", c.thresholds},
              {"provider", c.provider},
              {"llm", mentor::to_json(c.llm)},
              {"cors_allowlist", c.cors_allowlist},
              {"augment_per_minute", c.augment_per_minute},
              {"detect_count", c.detect_count}};
}

ServiceConfig service_config_from_json(const json& j) {
  static const std::set<std::string> known{"host",       "port",     "corpus_dir", "model_dir",      "index_path",
                                           "predictions_path", "thresholds", "provider", "llm", "cors_allowlist",
                                           "augment_per_minute", "detect_count"};
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) throw InvalidArgument("service config: unknown key '" + key + "'");
  }
  ServiceConfig c;
  try {
    c.host = j.value("host", c.host);
    c.port = j.value("port", c.port);
    c.corpus_dir = j.value("corpus_dir", std::string());
    c.model_dir = j.value("model_dir", std::string());
    c.index_path = j.value("index_path", std::string());
    c.predictions_path = j.value("predictions_path", std::string());
    if (j.contains("thresholds")) c.thresholds = j.at("thresholds").get<adoptmap::Thresholds>();
    if (j.contains("provider")) c.provider = j.at("provider").get<embed::ProviderSettings>();
    if (j.contains("llm")) c.llm = mentor::llm_settings_from_json(j.at("llm"));
    c.cors_allowlist = j.value("cors_allowlist", c.cors_allowlist);
    c.augment_per_minute = j.value("augment_per_minute", c.augment_per_minute);
    c.detect_count = j.value("detect_count", c.detect_count);
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("service config: ") + e.what());
  }
  return c;
}

void apply_env(ServiceConfig& config, const EnvLookup& env) {
  auto str = [&](const char* name, auto apply) {
    if (const char* v = env(name); v != nullptr && *v != '\0') apply(std::string(v));
  };
  str("DOCADOPT_HOST", [&](const std::string& v) { config.host = v; });
  str("DOCADOPT_PORT", [&](const std::string& v) {
    try {
      config.port = std::stoi(v);
    } catch (const std::exception&) {
      throw InvalidArgument("DOCADOPT_PORT is not a number: " + v);
    }
  });
  str("DOCADOPT_CORPUS", [&](const std::string& v) { config.corpus_dir = v; });
  str("DOCADOPT_MODEL", [&](const std::string& v) { config.model_dir = v; });
  str("DOCADOPT_INDEX", [&](const std::string& v) { config.index_path = v; });
  str("DOCADOPT_PREDICTIONS", [&](const std::string& v) { config.predictions_path = v; });
  str("DOCADOPT_EMBED_KIND", [&](const std::string& v) { config.provider.kind = v; });
  str("DOCADOPT_EMBED_URL", [&](const std::string& v) { config.provider.url = v; });
  str("DOCADOPT_EMBED_MODEL", [&](const std::string& v) { config.provider.model_id = v; });
  str("DOCADOPT_EMBED_CACHE", [&](const std::string& v) { config.provider.cache_dir = v; });
  str("DOCADOPT_LLM_KIND", [&](const std::string& v) { config.llm.kind = v; });
  str("DOCADOPT_LLM_MODEL", [&](const std::string& v) { config.llm.model_id = v; });
  str("DOCADOPT_LLM_BASE_URL", [&](const std::string& v) { config.llm.base_url = v; });
  str("DOCADOPT_CORS", [&](const std::string& v) {
    config.cors_allowlist.clear();
    std::size_t start = 0;
    while (start <= v.size()) {
      const auto comma = v.find(',', start);
      const auto item = v.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      if (!item.empty()) config.cors_allowlist.push_back(item);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  });
  str("DOCADOPT_AUGMENT_RATE", [&](const std::string& v) {
    try {
      config.augment_per_minute = std::stod(v);
    } catch (const std::exception&) {
      throw InvalidArgument("DOCADOPT_AUGMENT_RATE is not a number: " + v);
    }
  });
}

}  // namespace docadopt::service
