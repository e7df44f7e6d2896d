#include "docadopt/corpus/builder.hpp"

#include <spdlog/spdlog.h>

#include "docadopt/ingest/html.hpp"
#include "docadopt/ingest/mirror.hpp"
#include "docadopt/ingest/sections.hpp"

namespace docadopt::corpus {

std::size_t add_page(CorpusStore& store, const Page& page) {
  store.add_project(page.project);
  const auto doc = ingest::html::parse(page.raw_html);
  auto title = page.title.empty() ? doc.title() : page.title;
  store.add_page(PageRecord{page.page_id, page.project.repo_id, page.path, title});

  Page titled = page;
  titled.title = title;
  std::size_t added = 0;
  for (auto& traced : ingest::extract_sections_traced(titled, doc)) {
    const auto sentences = ingest::section_sentences(traced.section);
    store.add_section(std::move(traced.section), sentences);
    ++added;
  }
  return added;
}

CorpusStore build_from_mirror(const std::filesystem::path& mirror_root) {
  CorpusStore store;
  std::size_t pages = 0;
  ingest::for_each_mirrored_page(mirror_root, [&](Page&& page) {
    add_page(store, page);
    ++pages;
  });
  store.seal();
  spdlog::info("corpus: {} pages, {} sections, {} unique sentences", pages, store.sections().size(),
               store.sentences().size());
  return store;
}

}  // namespace docadopt::corpus
