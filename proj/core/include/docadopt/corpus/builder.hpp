#pragma once

#include <filesystem>

#include "docadopt/corpus/store.hpp"
#include "docadopt/types.hpp"

namespace docadopt::corpus {

/// Parse one page into sections and sentences and append them to the store.
/// The project is registered on first sight. Returns the number of sections added.
std::size_t add_page(CorpusStore& store, const Page& page);

/// Parse every page of a mirror (see ingest::mirror_project) into a sealed store.
CorpusStore build_from_mirror(const std::filesystem::path& mirror_root);

}  // namespace docadopt::corpus
