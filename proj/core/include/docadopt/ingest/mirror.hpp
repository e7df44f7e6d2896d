#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "docadopt/net/http.hpp"
#include "docadopt/types.hpp"

namespace docadopt::ingest {

struct MirrorOptions {
  std::size_t max_pages = 2000;
  std::chrono::milliseconds delay{0};  // per worker, between requests
  std::size_t parallelism = 4;
  /// Only paths under this prefix are crawled. Empty means the directory of
  /// the root URL, which keeps a single version tree (/en/latest/ but not /en/stable/).
  std::string path_prefix;
};

struct MirrorFailure {
  std::string path;
  std::string reason;

  bool operator==(const MirrorFailure&) const = default;
};

struct MirrorManifest {
  std::string docs_url;
  std::size_t page_count = 0;
  std::uint64_t byte_count = 0;
  std::vector<MirrorFailure> failures;
  std::map<std::string, std::string> pages;  // site path -> content hash
  std::size_t written = 0;                   // pages whose bytes changed this run
};

inline constexpr const char* kMirrorManifestFile = "mirror-manifest.json";
inline constexpr const char* kProjectFile = "project.json";

/// Crawl every same-origin HTML page reachable from docs_url and save it under
/// dest_dir at its URL path. Pages whose content hash is unchanged since the
/// previous manifest are not rewritten. Throws Error when the root page cannot
/// be fetched.
MirrorManifest mirror_docs(const std::string& docs_url, const std::filesystem::path& dest_dir,
                           net::HttpClient& client, const MirrorOptions& options = {});

/// Directory name of a project inside a mirror root ("owner/name" -> "owner__name").
std::string project_dir_name(const std::string& repo_id);

/// mirror_docs into `<mirror_root>/<project dir>` plus a project.json record.
MirrorManifest mirror_project(const ProjectRef& project, const std::filesystem::path& mirror_root,
                              net::HttpClient& client, const MirrorOptions& options = {});

void save_manifest(const MirrorManifest& manifest, const std::filesystem::path& path);
std::optional<MirrorManifest> load_manifest(const std::filesystem::path& path);

/// Visit every mirrored HTML page under a mirror root, projects and paths in
/// sorted order.
void for_each_mirrored_page(const std::filesystem::path& mirror_root, const std::function<void(Page&&)>& visit);

/// Links of an HTML page that the crawler would follow, resolved and without fragments.
std::vector<std::string> crawl_links(const std::string& page_url, std::string_view html,
                                     const std::string& path_prefix);

}  // namespace docadopt::ingest
