#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include "docadopt/net/http.hpp"

#include "docadopt/errors.hpp"
#include "docadopt/ingest/url.hpp"

namespace docadopt::net {

HttpResponse HttpClient::get(const std::string& url, Headers headers) {
  HttpRequest req;
  req.url = url;
  req.headers = std::move(headers);
  return send(req);
}

HttpResponse HttpClient::post_json(const std::string& url, std::string body, Headers headers) {
  HttpRequest req;
  req.method = "POST";
  req.url = url;
  req.headers = std::move(headers);
  req.body = std::move(body);
  req.content_type = "application/json";
  return send(req);
}

namespace {

class HttplibClient final : public HttpClient {
 public:
  explicit HttplibClient(HttpClientOptions options) : options_(std::move(options)) {}

  HttpResponse send(const HttpRequest& request) override {
    auto target = request.url;
    for (int hop = 0;; ++hop) {
      auto response = send_once(request, target);
      const bool redirect = response.status >= 301 && response.status <= 308 && response.status != 304;
      if (!redirect || response.location.empty() || hop >= options_.max_redirects) return response;
      const auto base = ingest::parse_url(target);
      const auto next = base ? ingest::resolve_url(*base, response.location) : std::nullopt;
      if (!next) return response;
      target = next->str(true);
    }
  }

 private:
  HttpResponse send_once(const HttpRequest& request, const std::string& target) {
    const auto url = ingest::parse_url(target);
    if (!url) throw InvalidArgument("not an absolute http(s) URL: " + target);

    httplib::Client client(url->scheme + "://" + url->host + ":" + std::to_string(url->effective_port()));
    client.set_connection_timeout(options_.connect_timeout);
    client.set_read_timeout(options_.read_timeout);
    client.set_follow_location(false);

    httplib::Headers headers{{"User-Agent", options_.user_agent}};
    for (const auto& [k, v] : request.headers) headers.emplace(k, v);

    const auto path = url->path + (url->query.empty() ? "" : "?" + url->query);
    httplib::Result result{nullptr, httplib::Error::Unknown};
    if (request.method == "GET") {
      result = client.Get(path, headers);
    } else if (request.method == "POST") {
      result = client.Post(path, headers, request.body,
                           request.content_type.empty() ? "application/octet-stream" : request.content_type);
    } else {
      throw InvalidArgument("unsupported HTTP method " + request.method);
    }
    if (!result) {
      throw RetriableError(request.method + " " + url->str() + " failed: " + httplib::to_string(result.error()));
    }
    HttpResponse out;
    out.status = result->status;
    out.body = std::move(result->body);
    out.content_type = result->get_header_value("Content-Type");
    out.location = result->get_header_value("Location");
    return out;
  }

  HttpClientOptions options_;
};

}  // namespace

std::unique_ptr<HttpClient> make_http_client(const HttpClientOptions& options) {
  return std::make_unique<HttplibClient>(options);
}

}  // namespace docadopt::net
