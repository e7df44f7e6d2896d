#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include <algorithm>

#include <spdlog/spdlog.h>

#include "docadopt/adoptmap/predict.hpp"
#include "docadopt/errors.hpp"
#include "docadopt/service/service.hpp"

namespace docadopt::service {

Service::Service(ServiceConfig config) : config_(std::move(config)) {
  config_.validate();
  store_ = corpus::load_corpus(config_.corpus_dir);
  merged_ = adoptmap::load_merged(config_.model_dir);
  index_ = corpus::load_index(config_.index_path.empty() ? config_.corpus_dir / "index.json" : config_.index_path);
  embedder_ = std::make_unique<embed::ProviderStack>(config_.provider);
  if (embedder_->provider().model_id() != merged_.model_id) {
    throw InvalidArgument("service: model was built with embeddings '" + merged_.model_id + "' but the provider is '" +
                          embedder_->provider().model_id() + "'");
  }
  llm_ = mentor::make_llm(config_.llm);
  auto predictions = config_.predictions_path.empty()
                         ? adoptmap::predict_corpus(store_, merged_, embedder_->provider())
                         : adoptmap::load_predictions(config_.predictions_path);
  api_ = std::make_unique<Api>(config_, store_, merged_, index_, std::move(predictions), embedder_->provider(), *llm_);
  spdlog::info("service: {} projects, {} sections, model {}", store_.projects().size(), store_.sections().size(),
               merged_.model_id);
}

Service::~Service() = default;

struct HttpServer::Impl {
  Api& api;
  std::vector<std::string> cors;
  httplib::Server server;

  Impl(Api& a, std::vector<std::string> c) : api(a), cors(std::move(c)) {}

  void send(httplib::Response& res, const ApiResponse& r) {
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
  }

  void add_cors(const httplib::Request& req, httplib::Response& res) const {
    const auto origin = req.get_header_value("Origin");
    if (origin.empty()) return;
    const bool any = std::find(cors.begin(), cors.end(), "*") != cors.end();
    if (!any && std::find(cors.begin(), cors.end(), origin) == cors.end()) return;
    res.set_header("Access-Control-Allow-Origin", any ? "*" : origin);
    res.set_header("Vary", "Origin");
  }

  void wire() {
    server.set_pre_routing_handler([this](const httplib::Request& req, httplib::Response& res) {
      add_cors(req, res);
      if (req.method == "OPTIONS") {
        res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
        res.set_header("Access-Control-Allow-Headers", "Content-Type");
        res.status = 204;
        return httplib::Server::HandlerResponse::Handled;
      }
      return httplib::Server::HandlerResponse::Unhandled;
    });
    server.set_exception_handler([](const httplib::Request& req, httplib::Response& res, std::exception_ptr ep) {
      std::string what = "internal error";
      try {
        std::rethrow_exception(ep);
      } catch (const std::exception& e) {
        what = e.what();
      } catch (...) {
      }
      spdlog::error("service: {} {}: {}", req.method, req.path, what);
      res.status = 500;
      res.set_content(nlohmann::json{{"error", what}}.dump(), "application/json");
    });
    server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
      if (!res.body.empty()) return;
      res.set_content(nlohmann::json{{"error", "not found"}}.dump(), "application/json");
    });
    server.Get("/health", [this](const httplib::Request&, httplib::Response& res) { send(res, api.health()); });
    server.Get("/projects", [this](const httplib::Request&, httplib::Response& res) { send(res, api.projects()); });
    server.Get(R"(/projects/(.+)/sections)", [this](const httplib::Request& req, httplib::Response& res) {
      std::optional<std::string> label;
      if (req.has_param("label")) label = req.get_param_value("label");
      send(res, api.sections(httplib::detail::decode_url(req.matches[1], false), label));
    });
    server.Post("/predict", [this](const httplib::Request& req, httplib::Response& res) { send(res, api.predict(req.body)); });
    server.Post("/augment", [this](const httplib::Request& req, httplib::Response& res) { send(res, api.augment(req.body)); });
  }
};

HttpServer::HttpServer(Api& api, std::vector<std::string> cors_allowlist)
    : impl_(std::make_unique<Impl>(api, std::move(cors_allowlist))) {
  impl_->wire();
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::start(const std::string& host, int port) {
  const int bound = port == 0 ? impl_->server.bind_to_any_port(host) : (impl_->server.bind_to_port(host, port) ? port : -1);
  if (bound < 0) throw Error("service: cannot bind " + host + ":" + std::to_string(port));
  thread_ = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  spdlog::info("service: listening on {}:{}", host, bound);
  return bound;
}

void HttpServer::run(const std::string& host, int port) {
  if (!impl_->server.bind_to_port(host, port)) throw Error("service: cannot bind " + host + ":" + std::to_string(port));
  spdlog::info("service: listening on {}:{}", host, port);
  impl_->server.listen_after_bind();
}

void HttpServer::stop() {
  impl_->server.stop();
  if (thread_.joinable()) thread_.join();
}

}  // namespace docadopt::service
