#include "docadopt/types.hpp"

#include "docadopt/text.hpp"

namespace docadopt {

std::string make_page_id(const std::string& repo_id, const std::string& path) {
  std::string key = repo_id;
  key += '\0';
  key += path;
  return "p" + hex64(fnv1a64(key));
}

std::string make_sentence_id(const std::string& text) {
  return "s" + hex64(fnv1a64(normalize_for_dedup(text)));
}

}  // namespace docadopt
