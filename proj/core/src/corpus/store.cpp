#include "docadopt/corpus/store.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "docadopt/errors.hpp"
#include "docadopt/serialize.hpp"

namespace docadopt::corpus {

namespace fs = std::filesystem;
using nlohmann::json;

void CorpusStore::require_open() const {
  if (sealed_) throw InvalidArgument("corpus store is sealed");
}

void CorpusStore::add_project(const ProjectRef& project) {
  require_open();
  if (project_pos_.contains(project.repo_id)) return;
  project_pos_.emplace(project.repo_id, projects_.size());
  projects_.push_back(project);
}

void CorpusStore::add_page(const PageRecord& page) {
  require_open();
  if (!project_pos_.contains(page.repo_id)) throw InvalidArgument("page references unknown project " + page.repo_id);
  if (page_pos_.contains(page.page_id)) throw InvalidArgument("duplicate page id " + page.page_id);
  page_pos_.emplace(page.page_id, pages_.size());
  pages_.push_back(page);
}

void CorpusStore::add_section(Section section, const std::vector<Sentence>& sentences) {
  require_open();
  if (!page_pos_.contains(section.page_id)) throw InvalidArgument("section references unknown page " + section.page_id);
  if (section_pos_.contains(section.section_id)) throw InvalidArgument("duplicate section id " + section.section_id);
  if (section.sentence_ids.empty()) throw InvalidArgument("section " + section.section_id + " has no sentences");
  for (const auto& s : sentences) {
    if (sentence_pos_.contains(s.sentence_id)) continue;
    sentence_pos_.emplace(s.sentence_id, sentences_.size());
    sentences_.push_back(s);
  }
  for (const auto& id : section.sentence_ids) {
    if (!sentence_pos_.contains(id)) throw InvalidArgument("section " + section.section_id + " lists unknown sentence " + id);
  }
  section_pos_.emplace(section.section_id, sections_.size());
  sections_.push_back(std::move(section));
}

void CorpusStore::seal() { sealed_ = true; }

std::vector<std::string> CorpusStore::domains() const {
  std::set<std::string> out;
  for (const auto& p : projects_) out.insert(p.oss_domain);
  return {out.begin(), out.end()};
}

namespace {

template <typename T>
const T* lookup(const std::unordered_map<std::string, std::size_t>& pos, const std::vector<T>& items,
                const std::string& key) {
  const auto it = pos.find(key);
  return it == pos.end() ? nullptr : &items[it->second];
}

}  // namespace

const ProjectRef* CorpusStore::find_project(const std::string& id) const { return lookup(project_pos_, projects_, id); }
const PageRecord* CorpusStore::find_page(const std::string& id) const { return lookup(page_pos_, pages_, id); }
const Section* CorpusStore::find_section(const std::string& id) const { return lookup(section_pos_, sections_, id); }
const Sentence* CorpusStore::find_sentence(const std::string& id) const {
  return lookup(sentence_pos_, sentences_, id);
}

const std::string& CorpusStore::section_repo(const Section& section) const {
  const auto* page = find_page(section.page_id);
  if (page == nullptr) throw NotFound("unknown page " + section.page_id);
  return page->repo_id;
}

const std::string& CorpusStore::section_domain(const Section& section) const {
  const auto* project = find_project(section_repo(section));
  if (project == nullptr) throw NotFound("unknown project for section " + section.section_id);
  return project->oss_domain;
}

void CorpusStore::check_integrity() const {
  for (const auto& page : pages_) {
    if (!find_project(page.repo_id)) throw FormatError("page " + page.page_id + " references unknown project");
  }
  for (const auto& section : sections_) {
    if (!find_page(section.page_id)) throw FormatError("section " + section.section_id + " references unknown page");
    for (const auto& id : section.sentence_ids) {
      if (!find_sentence(id)) throw FormatError("section " + section.section_id + " references unknown sentence " + id);
    }
  }
  for (const auto& sentence : sentences_) {
    if (!find_section(sentence.section_id)) {
      throw FormatError("sentence " + sentence.sentence_id + " references unknown section");
    }
  }
}

bool CorpusStore::operator==(const CorpusStore& other) const {
  return sealed_ == other.sealed_ && projects_ == other.projects_ && pages_ == other.pages_ &&
         sections_ == other.sections_ && sentences_ == other.sentences_;
}

namespace {

template <typename T>
void write_jsonl(const fs::path& path, const std::vector<T>& items) {
  std::string out;
  for (const auto& item : items) {
    out += json(item).dump();
    out += '\n';
  }
  write_file_atomic(path, out);
}

template <typename T>
std::vector<T> read_jsonl(const fs::path& path, std::size_t expected) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("missing corpus file " + path.string());
  std::vector<T> out;
  out.reserve(expected);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      out.push_back(json::parse(line).get<T>());
    } catch (const json::exception& e) {
      throw FormatError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (out.size() != expected) {
    throw FormatError(path.string() + " has " + std::to_string(out.size()) + " records, manifest says " +
                      std::to_string(expected));
  }
  return out;
}

}  // namespace

void save_corpus(const CorpusStore& store, const fs::path& dir) {
  fs::create_directories(dir);
  write_jsonl(dir / "pages.jsonl", store.pages());
  write_jsonl(dir / "sections.jsonl", store.sections());
  write_jsonl(dir / "sentences.jsonl", store.sentences());
  json manifest = {{"format_version", kCorpusFormatVersion},
                   {"domains", store.domains()},
                   {"projects", store.projects()},
                   {"sealed", store.sealed()},
                   {"counts",
                    {{"projects", store.projects().size()},
                     {"pages", store.pages().size()},
                     {"sections", store.sections().size()},
                     {"sentences", store.sentences().size()}}}};
  write_json(dir / "manifest.json", manifest);
}

CorpusStore load_corpus(const fs::path& dir) {
  if (!fs::exists(dir / "manifest.json")) throw NotFound("no corpus manifest in " + dir.string());
  const auto manifest = read_json(dir / "manifest.json");
  try {
    const int version = manifest.at("format_version").get<int>();
    if (version != kCorpusFormatVersion) throw VersionError((dir / "manifest.json").string(), version, kCorpusFormatVersion);
    const auto& counts = manifest.at("counts");

    CorpusStore store;
    for (const auto& p : manifest.at("projects")) store.add_project(p.get<ProjectRef>());
    if (store.projects().size() != counts.at("projects").get<std::size_t>()) {
      throw FormatError("manifest project list does not match its count");
    }
    for (auto& page : read_jsonl<PageRecord>(dir / "pages.jsonl", counts.at("pages"))) store.add_page(page);

    auto sentences = read_jsonl<Sentence>(dir / "sentences.jsonl", counts.at("sentences"));
    auto sections = read_jsonl<Section>(dir / "sections.jsonl", counts.at("sections"));
    std::unordered_map<std::string, std::vector<Sentence>> owned;
    for (auto& s : sentences) owned[s.section_id].push_back(std::move(s));
    for (auto& section : sections) {
      auto it = owned.find(section.section_id);
      static const std::vector<Sentence> none;
      const auto& own = it == owned.end() ? none : it->second;
      store.add_section(std::move(section), own);
    }
    if (store.sentences().size() != counts.at("sentences").get<std::size_t>()) {
      throw FormatError("sentences.jsonl contains sentences owned by no section");
    }
    store.check_integrity();
    if (manifest.value("sealed", true)) store.seal();
    return store;
  } catch (const InvalidArgument& e) {
    throw FormatError(dir.string() + ": " + e.what());
  } catch (const json::exception& e) {
    throw FormatError((dir / "manifest.json").string() + ": " + e.what());
  }
}

}  // namespace docadopt::corpus
