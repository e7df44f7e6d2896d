#pragma once

#include <chrono>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace docadopt::net {

using Headers = std::vector<std::pair<std::string, std::string>>;

struct HttpRequest {
  std::string method = "GET";
  std::string url;
  Headers headers;
  std::string body;
  std::string content_type;
};

struct HttpResponse {
  int status = 0;
  std::string content_type;
  std::string body;
  std::string location;  // redirect target when status is 3xx

  bool ok() const { return status >= 200 && status < 300; }
};

/// Blocking HTTP transport. Transport-level failures (DNS, connect, TLS,
/// timeout) throw RetriableError; HTTP error statuses are returned as-is.
class HttpClient {
 public:
  virtual ~HttpClient() = default;
  virtual HttpResponse send(const HttpRequest& request) = 0;

  HttpResponse get(const std::string& url, Headers headers = {});
  HttpResponse post_json(const std::string& url, std::string body, Headers headers = {});
};

struct HttpClientOptions {
  std::chrono::milliseconds connect_timeout{10'000};
  std::chrono::milliseconds read_timeout{60'000};
  std::string user_agent = "docadopt/0.1";
  int max_redirects = 5;
};

/// cpp-httplib backed client with TLS through OpenSSL. Thread-safe: each call
/// opens its own connection.
std::unique_ptr<HttpClient> make_http_client(const HttpClientOptions& options = {});

}  // namespace docadopt::net
