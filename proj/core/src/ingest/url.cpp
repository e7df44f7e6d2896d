#include "docadopt/ingest/url.hpp"

#include <cctype>
#include <charconv>
#include <vector>

#include "docadopt/text.hpp"

namespace docadopt::ingest {

namespace {

int default_port(const std::string& scheme) { return scheme == "https" ? 443 : 80; }

void split_query_fragment(std::string_view rest, std::string& path, std::string& query,
                          std::string& fragment) {
  const auto hash = rest.find('#');
  if (hash != std::string_view::npos) {
    fragment = std::string(rest.substr(hash + 1));
    rest = rest.substr(0, hash);
  }
  const auto q = rest.find('?');
  if (q != std::string_view::npos) {
    query = std::string(rest.substr(q + 1));
    rest = rest.substr(0, q);
  }
  path = std::string(rest);
}

}  // namespace

int Url::effective_port() const { return port == 0 ? default_port(scheme) : port; }

std::string Url::origin() const {
  std::string out = scheme + "://" + host;
  if (port != 0 && port != default_port(scheme)) out += ":" + std::to_string(port);
  return out;
}

std::string Url::str(bool with_query) const {
  std::string out = origin() + path;
  if (with_query && !query.empty()) out += "?" + query;
  return out;
}

bool Url::same_origin(const Url& other) const {
  return scheme == other.scheme && host == other.host && effective_port() == other.effective_port();
}

std::optional<Url> parse_url(std::string_view text) {
  text = trim(text);
  const auto colon = text.find("://");
  if (colon == std::string_view::npos || colon == 0) return std::nullopt;
  Url url;
  url.scheme = to_lower(text.substr(0, colon));
  if (url.scheme != "http" && url.scheme != "https") return std::nullopt;
  auto rest = text.substr(colon + 3);
  const auto slash = rest.find_first_of("/?#");
  auto authority = rest.substr(0, slash);
  rest = slash == std::string_view::npos ? std::string_view{} : rest.substr(slash);
  if (const auto at = authority.rfind('@'); at != std::string_view::npos) {
    authority = authority.substr(at + 1);
  }
  if (const auto pc = authority.rfind(':'); pc != std::string_view::npos) {
    const auto port_text = authority.substr(pc + 1);
    int port = 0;
    const auto [ptr, ec] = std::from_chars(port_text.data(), port_text.data() + port_text.size(), port);
    if (ec != std::errc{} || ptr != port_text.data() + port_text.size() || port <= 0 || port > 65535) {
      return std::nullopt;
    }
    url.port = port;
    authority = authority.substr(0, pc);
  }
  if (authority.empty()) return std::nullopt;
  for (const char c : authority) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '.' || c == '_')) {
      return std::nullopt;
    }
  }
  url.host = to_lower(authority);
  split_query_fragment(rest, url.path, url.query, url.fragment);
  if (url.path.empty()) url.path = "/";
  url.path = remove_dot_segments(url.path);
  return url;
}

std::string remove_dot_segments(std::string_view path) {
  std::vector<std::string_view> out;
  const bool trailing_slash = path.ends_with('/') || path.ends_with("/.") || path.ends_with("/..") ||
                              path == "." || path == "..";
  std::size_t start = 0;
  while (start <= path.size()) {
    const auto end = path.find('/', start);
    const auto seg = path.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    if (seg == "..") {
      if (!out.empty()) out.pop_back();
    } else if (!seg.empty() && seg != ".") {
      out.push_back(seg);
    }
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  std::string result = "/";
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (i > 0) result += '/';
    result += out[i];
  }
  if (trailing_slash && !out.empty()) result += '/';
  return result;
}

std::optional<Url> resolve_url(const Url& base, std::string_view reference) {
  reference = trim(reference);
  if (reference.find("://") != std::string_view::npos) return parse_url(reference);
  if (reference.starts_with("//")) return parse_url(base.scheme + ":" + std::string(reference));
  // Other schemes (mailto:, javascript:) are not resolvable to pages.
  if (const auto colon = reference.find(':'); colon != std::string_view::npos) {
    const auto first_sep = reference.find_first_of("/?#");
    if (first_sep == std::string_view::npos || colon < first_sep) return std::nullopt;
  }
  Url out = base;
  out.query.clear();
  out.fragment.clear();
  std::string path;
  std::string query;
  std::string fragment;
  split_query_fragment(reference, path, query, fragment);
  out.fragment = fragment;
  if (path.empty()) {
    out.query = query.empty() && reference.find('?') == std::string_view::npos ? base.query : query;
    return out;
  }
  out.query = query;
  if (path.starts_with('/')) {
    out.path = remove_dot_segments(path);
  } else {
    const auto last = base.path.rfind('/');
    const std::string dir = last == std::string::npos ? "/" : base.path.substr(0, last + 1);
    out.path = remove_dot_segments(dir + path);
  }
  return out;
}

std::string url_encode(std::string_view text) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  for (const char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
      out.push_back(ch);
    } else {
      out.push_back('%');
      out.push_back(kHex[c >> 4]);
      out.push_back(kHex[c & 0xF]);
    }
  }
  return out;
}

}  // namespace docadopt::ingest
