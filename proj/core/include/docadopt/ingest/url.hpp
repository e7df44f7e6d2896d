#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace docadopt::ingest {

/// Minimal absolute http(s) URL. Query and fragment are kept separately so
/// callers can drop them.
struct Url {
  std::string scheme;  // lowercase
  std::string host;    // lowercase
  int port = 0;        // 0 = scheme default
  std::string path = "/";
  std::string query;
  std::string fragment;

  std::string origin() const;
  std::string str(bool with_query = false) const;
  int effective_port() const;
  bool same_origin(const Url& other) const;
};

std::optional<Url> parse_url(std::string_view text);

/// RFC 3986 reference resolution.
std::optional<Url> resolve_url(const Url& base, std::string_view reference);

/// Remove "." and ".." segments; never climbs above the root.
std::string remove_dot_segments(std::string_view path);

/// Percent-encode for use in a query string component.
std::string url_encode(std::string_view text);

}  // namespace docadopt::ingest
