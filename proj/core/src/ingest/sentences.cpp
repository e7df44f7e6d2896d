#include "docadopt/ingest/sentences.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "docadopt/text.hpp"

namespace docadopt::ingest {

namespace {

// Abbreviations that do not end a sentence when followed by a capital.
constexpr std::array<std::string_view, 33> kAbbreviations = {
    "al",   "approx", "ca",   "cf",   "ch",   "dr",  "e.g", "eq",  "eqs",  "esp", "fig",
    "figs", "i.e",    "incl", "jr",   "min",  "mr",  "mrs", "ms",  "no",   "nos", "p",
    "pp",   "prof",   "ref",  "refs", "resp", "sec", "sr",  "st",  "viz",  "vol", "vs"};

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f'; }

// Length of a closing quote/bracket at `pos`, 0 if none.
std::size_t closer_len(std::string_view s, std::size_t pos) {
  const char c = s[pos];
  if (c == ')' || c == ']' || c == '"' || c == '\'') return 1;
  // U+2019 RIGHT SINGLE QUOTATION MARK, U+201D RIGHT DOUBLE QUOTATION MARK, U+00BB
  if (s.compare(pos, 3, "\xE2\x80\x99") == 0 || s.compare(pos, 3, "\xE2\x80\x9D") == 0) return 3;
  if (s.compare(pos, 2, "\xC2\xBB") == 0) return 2;
  return 0;
}

bool looks_like_dotted_abbreviation(std::string_view word) {
  // "e.g", "U.S", "i.e": single letters joined by dots.
  if (word.find('.') == std::string_view::npos) return false;
  std::size_t run = 0;
  for (const char c : word) {
    if (c == '.') {
      if (run == 0 || run > 2) return false;
      run = 0;
    } else if (std::isalpha(static_cast<unsigned char>(c))) {
      ++run;
    } else {
      return false;
    }
  }
  return run > 0 && run <= 2;
}

bool is_all_digits(std::string_view w) {
  return !w.empty() && std::all_of(w.begin(), w.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

// Decide whether a "." terminating `word` is an abbreviation period.
bool is_abbreviation(std::string_view word, std::string_view sentence_so_far) {
  while (!word.empty() && (word.front() == '(' || word.front() == '"' || word.front() == '\'')) {
    word.remove_prefix(1);
  }
  if (word.empty()) return false;
  const std::string lower = to_lower(word);
  if (std::find(kAbbreviations.begin(), kAbbreviations.end(), lower) != kAbbreviations.end()) return true;
  if (word.size() == 1 && std::isalpha(static_cast<unsigned char>(word[0]))) return true;
  if (looks_like_dotted_abbreviation(word)) return true;
  // List enumerators: "1. Install the package".
  if (is_all_digits(word) && trim(sentence_so_far) == word) return true;
  return false;
}

void split_paragraph(std::string_view para, std::vector<std::string>& out) {
  const auto n = para.size();
  std::size_t start = 0;
  std::size_t i = 0;
  while (i < n) {
    const char c = para[i];
    if (c != '.' && c != '!' && c != '?') {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < n && (para[j] == '.' || para[j] == '!' || para[j] == '?')) ++j;
    const bool single_period = (j - i == 1) && c == '.';
    while (j < n) {
      const auto len = closer_len(para, j);
      if (len == 0) break;
      j += len;
    }
    if (j < n && !is_space(para[j])) {
      i = j;
      continue;
    }
    std::size_t k = j;
    while (k < n && is_space(para[k])) ++k;
    bool boundary = true;
    if (k < n && std::islower(static_cast<unsigned char>(para[k]))) boundary = false;
    if (boundary && single_period) {
      std::size_t w = i;
      while (w > start && !is_space(para[w - 1])) --w;
      if (is_abbreviation(para.substr(w, i - w), para.substr(start, i - start))) boundary = false;
    }
    if (boundary) {
      const auto piece = trim(para.substr(start, j - start));
      if (!piece.empty()) out.emplace_back(piece);
      start = j;
    }
    i = j;
  }
  const auto tail = trim(para.substr(start));
  if (!tail.empty()) out.emplace_back(tail);
}

}  // namespace

std::vector<std::string> split_sentences(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  const auto n = text.size();
  std::size_t i = 0;
  while (i < n) {
    if (text[i] != '\n') {
      ++i;
      continue;
    }
    // A blank line (newline, optional spaces, newline) ends the paragraph.
    std::size_t k = i + 1;
    while (k < n && (text[k] == ' ' || text[k] == '\t' || text[k] == '\r')) ++k;
    if (k < n && text[k] == '\n') {
      split_paragraph(text.substr(start, i - start), out);
      while (k < n && is_space(text[k])) ++k;
      start = k;
      i = k;
    } else {
      i = k;
    }
  }
  if (start < n) split_paragraph(text.substr(start), out);
  return out;
}

}  // namespace docadopt::ingest
