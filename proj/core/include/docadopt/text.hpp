#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace docadopt {

/// Token normalization shared by the domain index, the count vectorizer and
/// the hashing embedder.
///
/// Tokens are maximal runs of Unicode letters/digits/underscore, lowercased.
/// A hyphen or dot is kept when it sits between two word characters, so
/// "f1-score" and "3.8" survive as single tokens.
struct TokenizerConfig {
  bool remove_stop_words = true;
  std::size_t min_token_length = 2;  // in code points

  bool operator==(const TokenizerConfig&) const = default;
};

std::vector<std::string> tokenize(std::string_view text, const TokenizerConfig& config = {});

/// Word n-grams of length 1..max_n joined by a single space.
std::vector<std::string> ngrams(const std::vector<std::string>& tokens, std::size_t max_n);

/// Fixed English stop-word list (the scikit-learn list, 318 words).
bool is_stop_word(std::string_view token);
std::size_t stop_word_count();

/// Full Unicode simple lowercase mapping.
std::string to_lower(std::string_view text);

/// Trim and collapse every whitespace run to a single space.
std::string collapse_whitespace(std::string_view text);

/// Key used for corpus-wide sentence deduplication: lowercase + collapsed whitespace.
std::string normalize_for_dedup(std::string_view text);

std::string_view trim(std::string_view text);

/// 64-bit FNV-1a. Stable across platforms; used for content ids and cache keys.
std::uint64_t fnv1a64(std::string_view data, std::uint64_t basis = 0xcbf29ce484222325ULL);

std::string hex64(std::uint64_t value);

/// Case-insensitive search for `needle` in `haystack` where the match must start
/// and end on token boundaries.
bool contains_on_token_boundary(std::string_view haystack, std::string_view needle);

}  // namespace docadopt
