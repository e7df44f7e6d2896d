#include "docadopt/serialize.hpp"

#include <fstream>
#include <sstream>
#include <system_error>

#include "docadopt/errors.hpp"

namespace docadopt {

using nlohmann::json;

void to_json(json& j, const ProjectRef& v) {
  j = json{{"oss_domain", v.oss_domain}, {"repo_id", v.repo_id}, {"docs_url", v.docs_url}, {"stars", v.stars}};
}

void from_json(const json& j, ProjectRef& v) {
  j.at("oss_domain").get_to(v.oss_domain);
  j.at("repo_id").get_to(v.repo_id);
  j.at("docs_url").get_to(v.docs_url);
  v.stars = j.value("stars", std::uint64_t{0});
}

void to_json(json& j, const PageRecord& v) {
  j = json{{"page_id", v.page_id}, {"repo_id", v.repo_id}, {"path", v.path}, {"title", v.title}};
}

void from_json(const json& j, PageRecord& v) {
  j.at("page_id").get_to(v.page_id);
  j.at("repo_id").get_to(v.repo_id);
  j.at("path").get_to(v.path);
  j.at("title").get_to(v.title);
}

void to_json(json& j, const Section& v) {
  j = json{{"section_id", v.section_id},
           {"page_id", v.page_id},
           {"heading_path", v.heading_path},
           {"text", v.text},
           {"sentence_ids", v.sentence_ids}};
}

void from_json(const json& j, Section& v) {
  j.at("section_id").get_to(v.section_id);
  j.at("page_id").get_to(v.page_id);
  j.at("heading_path").get_to(v.heading_path);
  j.at("text").get_to(v.text);
  j.at("sentence_ids").get_to(v.sentence_ids);
}

void to_json(json& j, const Sentence& v) {
  j = json{{"sentence_id", v.sentence_id}, {"section_id", v.section_id}, {"text", v.text}};
}

void from_json(const json& j, Sentence& v) {
  j.at("sentence_id").get_to(v.sentence_id);
  j.at("section_id").get_to(v.section_id);
  j.at("text").get_to(v.text);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NotFound("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json read_json(const std::filesystem::path& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw Error("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

void write_json(const std::filesystem::path& path, const json& value, int indent) {
  write_file_atomic(path, value.dump(indent) + "\n");
}

}  // namespace docadopt
