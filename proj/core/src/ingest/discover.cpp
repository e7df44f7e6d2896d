#include "docadopt/ingest/discover.hpp"

#include <algorithm>
#include <fstream>

#include <spdlog/spdlog.h>

#include "docadopt/errors.hpp"
#include "docadopt/ingest/url.hpp"
#include "docadopt/serialize.hpp"
#include "docadopt/text.hpp"

namespace docadopt::ingest {

namespace fs = std::filesystem;
using nlohmann::json;

std::string discovery_query(std::string_view oss_domain) {
  return "topic:" + std::string(oss_domain) + " readthedocs.io in:wiki or readthedocs.io in:readme sort:stars";
}

std::vector<ProjectRef> discover_projects(const std::string& oss_domain, std::size_t limit, CodeSearchClient& client,
                                          const std::vector<std::string>& domains) {
  if (limit == 0) throw InvalidArgument("discover: limit must be positive");
  if (std::find(domains.begin(), domains.end(), oss_domain) == domains.end()) {
    throw InvalidArgument("discover: '" + oss_domain + "' is not in the configured domain list");
  }
  auto hits = client.search_repositories(discovery_query(oss_domain), limit);
  std::stable_sort(hits.begin(), hits.end(), [](const RepoHit& a, const RepoHit& b) { return a.stars > b.stars; });

  std::vector<ProjectRef> out;
  for (const auto& hit : hits) {
    if (out.size() >= limit) break;
    const auto docs = client.resolve_docs_url(hit);
    if (!docs || docs->empty() || !parse_url(*docs)) {
      spdlog::info("discover: {} has no resolvable documentation URL, skipped", hit.repo_id);
      continue;
    }
    out.push_back(ProjectRef{oss_domain, hit.repo_id, *docs, hit.stars});
  }
  return out;
}

std::vector<std::string> load_domain_list(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw NotFound("domain list not found: " + path.string());
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    const auto t = trim(line);
    if (!t.empty() && t.front() != '#') out.emplace_back(t);
  }
  return out;
}

std::vector<std::string> readthedocs_candidates(const RepoHit& repo) {
  std::vector<std::string> out;
  if (repo.homepage.find("readthedocs.io") != std::string::npos ||
      repo.homepage.find("readthedocs.org") != std::string::npos) {
    out.push_back(repo.homepage);
  }
  const auto slash = repo.repo_id.find('/');
  auto name = to_lower(slash == std::string::npos ? repo.repo_id : repo.repo_id.substr(slash + 1));
  std::replace(name.begin(), name.end(), '_', '-');
  std::replace(name.begin(), name.end(), '.', '-');
  out.push_back("https://" + name + ".readthedocs.io/");
  if (slash != std::string::npos) {
    auto owner = to_lower(repo.repo_id.substr(0, slash));
    std::replace(owner.begin(), owner.end(), '_', '-');
    if (owner != name) out.push_back("https://" + owner + "-" + name + ".readthedocs.io/");
  }
  return out;
}

GitHubSearchClient::GitHubSearchClient(net::HttpClient& http, std::string token, fs::path cache_dir,
                                       std::string api_base)
    : http_(http), token_(std::move(token)), cache_dir_(std::move(cache_dir)), api_base_(std::move(api_base)) {}

std::vector<RepoHit> GitHubSearchClient::search_repositories(const std::string& query, std::size_t limit) {
  const auto per_page = std::clamp<std::size_t>(limit * 2, 1, 100);
  const auto key = hex64(fnv1a64(query + "\n" + std::to_string(per_page)));
  const auto cache_file = cache_dir_ / ("search-" + key + ".json");

  json body;
  if (!cache_dir_.empty() && fs::exists(cache_file)) {
    body = read_json(cache_file);
  } else {
    net::Headers headers{{"Accept", "application/vnd.github+json"}};
    if (!token_.empty()) headers.emplace_back("Authorization", "Bearer " + token_);
    const auto url = api_base_ + "/search/repositories?q=" + url_encode(query) + "&per_page=" + std::to_string(per_page);
    const auto response = http_.get(url, headers);
    if (response.status == 403 || response.status == 429 || response.status >= 500) {
      throw RetriableError("code search returned HTTP " + std::to_string(response.status));
    }
    if (!response.ok()) throw Error("code search returned HTTP " + std::to_string(response.status));
    try {
      body = json::parse(response.body);
    } catch (const json::parse_error& e) {
      throw RetriableError(std::string("code search returned malformed JSON: ") + e.what());
    }
    if (!cache_dir_.empty()) write_json(cache_file, body);
  }

  std::vector<RepoHit> out;
  for (const auto& item : body.value("items", json::array())) {
    RepoHit hit;
    hit.repo_id = item.value("full_name", "");
    if (item.contains("homepage") && item["homepage"].is_string()) hit.homepage = item["homepage"];
    hit.stars = item.value("stargazers_count", std::uint64_t{0});
    if (!hit.repo_id.empty()) out.push_back(std::move(hit));
  }
  return out;
}

std::optional<std::string> GitHubSearchClient::resolve_docs_url(const RepoHit& repo) {
  for (const auto& candidate : readthedocs_candidates(repo)) {
    try {
      const auto response = http_.get(candidate);
      if (response.ok()) return candidate;
    } catch (const RetriableError& e) {
      spdlog::debug("discover: probe {} failed: {}", candidate, e.what());
    }
  }
  return std::nullopt;
}

}  // namespace docadopt::ingest
