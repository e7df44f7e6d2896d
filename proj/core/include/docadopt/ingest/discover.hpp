#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "docadopt/net/http.hpp"
#include "docadopt/types.hpp"

namespace docadopt::ingest {

struct RepoHit {
  std::string repo_id;  // owner/name
  std::string homepage;
  std::uint64_t stars = 0;
};

/// Code-search gateway: repository search plus documentation-host lookup.
class CodeSearchClient {
 public:
  virtual ~CodeSearchClient() = default;
  /// Throws RetriableError when the gateway is unreachable.
  virtual std::vector<RepoHit> search_repositories(const std::string& query, std::size_t limit) = 0;
  virtual std::optional<std::string> resolve_docs_url(const RepoHit& repo) = 0;
};

std::string discovery_query(std::string_view oss_domain);

/// Top-starred projects of a domain that have hosted documentation, at most
/// `limit`, descending stars. Repositories without a docs URL are skipped.
std::vector<ProjectRef> discover_projects(const std::string& oss_domain, std::size_t limit,
                                          CodeSearchClient& client, const std::vector<std::string>& domains);

/// One domain label per non-empty, non-comment line.
std::vector<std::string> load_domain_list(const std::filesystem::path& path);

/// GitHub search API plus Read the Docs slug probing. Token comes from the
/// caller (normally GITHUB_TOKEN); search responses are cached on disk by query.
class GitHubSearchClient final : public CodeSearchClient {
 public:
  GitHubSearchClient(net::HttpClient& http, std::string token, std::filesystem::path cache_dir,
                     std::string api_base = "https://api.github.com");

  std::vector<RepoHit> search_repositories(const std::string& query, std::size_t limit) override;
  std::optional<std::string> resolve_docs_url(const RepoHit& repo) override;

 private:
  net::HttpClient& http_;
  std::string token_;
  std::filesystem::path cache_dir_;
  std::string api_base_;
};

/// Candidate Read the Docs URLs for a repository, most likely first.
std::vector<std::string> readthedocs_candidates(const RepoHit& repo);

}  // namespace docadopt::ingest
