#include "docadopt/ingest/mirror.hpp"

#include <algorithm>
#include <future>
#include <set>
#include <thread>

#include <spdlog/spdlog.h>

#include "docadopt/errors.hpp"
#include "docadopt/ingest/html.hpp"
#include "docadopt/ingest/url.hpp"
#include "docadopt/serialize.hpp"
#include "docadopt/text.hpp"

namespace docadopt::ingest {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

bool looks_like_html_path(std::string_view path) {
  if (path.empty() || path.back() == '/') return true;
  const auto slash = path.rfind('/');
  const auto name = path.substr(slash == std::string_view::npos ? 0 : slash + 1);
  const auto dot = name.rfind('.');
  if (dot == std::string_view::npos) return true;
  const auto ext = to_lower(name.substr(dot));
  return ext == ".html" || ext == ".htm";
}

bool is_html_content_type(std::string_view ct) {
  return ct.empty() || to_lower(ct).find("html") != std::string::npos;
}

// URL path -> file path under the mirror; directories map to index.html.
std::string site_file_path(std::string path) {
  if (path.empty() || path.back() == '/') path += "index.html";
  while (!path.empty() && path.front() == '/') path.erase(path.begin());
  return path;
}

std::string default_prefix(const Url& root) {
  const auto slash = root.path.rfind('/');
  return slash == std::string::npos ? "/" : root.path.substr(0, slash + 1);
}

struct FetchOutcome {
  std::string url;
  std::optional<net::HttpResponse> response;
  std::string error;
};

FetchOutcome fetch(net::HttpClient& client, const std::string& url) {
  FetchOutcome out{url, std::nullopt, {}};
  try {
    out.response = client.get(url);
  } catch (const std::exception& e) {
    out.error = e.what();
  }
  return out;
}

}  // namespace

std::vector<std::string> crawl_links(const std::string& page_url, std::string_view html_text,
                                     const std::string& path_prefix) {
  const auto base = parse_url(page_url);
  if (!base) return {};
  const auto doc = html::parse(html_text);
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (html::NodeId id = 0; id < doc.size(); ++id) {
    const auto& node = doc.node(id);
    if (node.kind != html::NodeKind::Element || node.tag != "a") continue;
    const auto* href = doc.attribute(id, "href");
    if (href == nullptr || href->empty() || href->front() == '#') continue;
    auto target = resolve_url(*base, trim(*href));
    if (!target || !target->same_origin(*base)) continue;
    if (!target->path.starts_with(path_prefix) || !looks_like_html_path(target->path)) continue;
    target->fragment.clear();
    target->query.clear();
    auto s = target->str();
    if (seen.insert(s).second) out.push_back(std::move(s));
  }
  return out;
}

MirrorManifest mirror_docs(const std::string& docs_url, const fs::path& dest_dir, net::HttpClient& client,
                           const MirrorOptions& options) {
  auto root = parse_url(docs_url);
  if (!root) throw InvalidArgument("invalid documentation URL: " + docs_url);
  root->fragment.clear();
  root->query.clear();
  const auto prefix = options.path_prefix.empty() ? default_prefix(*root) : options.path_prefix;
  const auto previous = load_manifest(dest_dir / kMirrorManifestFile);

  MirrorManifest manifest;
  manifest.docs_url = docs_url;

  // Keyed by mirror file, so "dir/" and "dir/index.html" are one page.
  std::vector<std::string> frontier{root->str()};
  std::set<std::string> discovered{site_file_path(root->path)};
  const auto workers = std::max<std::size_t>(1, options.parallelism);
  bool first = true;

  while (!frontier.empty()) {
    std::vector<FetchOutcome> outcomes(frontier.size());
    for (std::size_t start = 0; start < frontier.size(); start += workers) {
      const auto end = std::min(frontier.size(), start + workers);
      std::vector<std::future<FetchOutcome>> batch;
      for (auto i = start; i < end; ++i) {
        batch.push_back(std::async(std::launch::async, [&, i] {
          if (options.delay.count() > 0) std::this_thread::sleep_for(options.delay);
          return fetch(client, frontier[i]);
        }));
      }
      for (auto i = start; i < end; ++i) outcomes[i] = batch[i - start].get();
    }

    std::vector<std::string> next;
    for (auto& outcome : outcomes) {
      const auto url = parse_url(outcome.url);
      const auto path = url->path;
      std::string reason = outcome.error;
      if (reason.empty() && !outcome.response->ok()) reason = "HTTP " + std::to_string(outcome.response->status);
      if (!reason.empty()) {
        if (first) throw Error("cannot fetch documentation root " + docs_url + ": " + reason);
        spdlog::warn("mirror: {} failed: {}", outcome.url, reason);
        manifest.failures.push_back({path, reason});
        continue;
      }
      first = false;
      auto& response = *outcome.response;
      if (!is_html_content_type(response.content_type)) continue;

      const auto file = site_file_path(path);
      const auto hash = hex64(fnv1a64(response.body));
      const bool unchanged = previous && previous->pages.contains(file) && previous->pages.at(file) == hash &&
                             fs::exists(dest_dir / file);
      if (!unchanged) {
        write_file_atomic(dest_dir / file, response.body);
        ++manifest.written;
      }
      manifest.pages[file] = hash;
      manifest.byte_count += response.body.size();

      for (auto& link : crawl_links(outcome.url, response.body, prefix)) {
        if (discovered.size() >= options.max_pages) break;
        if (discovered.insert(site_file_path(parse_url(link)->path)).second) next.push_back(std::move(link));
      }
    }
    first = false;
    frontier = std::move(next);
  }

  manifest.page_count = manifest.pages.size();
  std::sort(manifest.failures.begin(), manifest.failures.end(),
            [](const auto& a, const auto& b) { return a.path < b.path; });
  save_manifest(manifest, dest_dir / kMirrorManifestFile);
  return manifest;
}

std::string project_dir_name(const std::string& repo_id) {
  std::string out;
  for (const char c : repo_id) {
    if (c == '/') {
      out += "__";
    } else if (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.') {
      out += c;
    } else {
      out += '_';
    }
  }
  return out;
}

MirrorManifest mirror_project(const ProjectRef& project, const fs::path& mirror_root, net::HttpClient& client,
                              const MirrorOptions& options) {
  const auto dir = mirror_root / project_dir_name(project.repo_id);
  auto manifest = mirror_docs(project.docs_url, dir, client, options);
  write_json(dir / kProjectFile, json(project));
  return manifest;
}

void save_manifest(const MirrorManifest& m, const fs::path& path) {
  json failures = json::array();
  for (const auto& f : m.failures) failures.push_back({{"path", f.path}, {"reason", f.reason}});
  write_json(path, {{"format_version", 1},
                    {"docs_url", m.docs_url},
                    {"page_count", m.page_count},
                    {"byte_count", m.byte_count},
                    {"failures", failures},
                    {"pages", m.pages}});
}

std::optional<MirrorManifest> load_manifest(const fs::path& path) {
  if (!fs::exists(path)) return std::nullopt;
  const auto j = read_json(path);
  MirrorManifest m;
  j.at("docs_url").get_to(m.docs_url);
  j.at("page_count").get_to(m.page_count);
  j.at("byte_count").get_to(m.byte_count);
  for (const auto& f : j.at("failures")) m.failures.push_back({f.at("path"), f.at("reason")});
  j.at("pages").get_to(m.pages);
  return m;
}

void for_each_mirrored_page(const fs::path& mirror_root, const std::function<void(Page&&)>& visit) {
  if (!fs::is_directory(mirror_root)) throw NotFound("mirror directory not found: " + mirror_root.string());
  std::vector<fs::path> projects;
  for (const auto& entry : fs::directory_iterator(mirror_root)) {
    if (entry.is_directory() && fs::exists(entry.path() / kProjectFile)) projects.push_back(entry.path());
  }
  std::sort(projects.begin(), projects.end());
  for (const auto& dir : projects) {
    const auto project = read_json(dir / kProjectFile).get<ProjectRef>();
    std::vector<fs::path> files;
    for (const auto& entry : fs::recursive_directory_iterator(dir)) {
      if (!entry.is_regular_file()) continue;
      const auto ext = to_lower(entry.path().extension().string());
      if (ext == ".html" || ext == ".htm") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& file : files) {
      Page page;
      page.project = project;
      page.path = fs::relative(file, dir).generic_string();
      page.page_id = make_page_id(project.repo_id, page.path);
      page.raw_html = read_file(file);
      visit(std::move(page));
    }
  }
}

}  // namespace docadopt::ingest
