#include "docadopt/text.hpp"

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include <algorithm>
#include <array>
#include <cstdio>

namespace docadopt {
namespace {

// scikit-learn ENGLISH_STOP_WORDS, sorted.
constexpr std::array kStopWords = {
#include "stop_words.inc"
};

bool is_word_codepoint(UChar32 c) {
  if (c < 0x80) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
  }
  if (u_isalnum(c)) return true;
  const auto type = u_charType(c);
  return type == U_NON_SPACING_MARK || type == U_COMBINING_SPACING_MARK ||
         type == U_ENCLOSING_MARK;
}

struct Decoded {
  UChar32 cp;
  std::int32_t next;
};

Decoded decode_at(std::string_view s, std::int32_t i) {
  UChar32 c = 0;
  const auto* p = reinterpret_cast<const std::uint8_t*>(s.data());
  const auto len = static_cast<std::int32_t>(s.size());
  U8_NEXT(p, i, len, c);
  return {c, i};
}

void append_utf8(std::string& out, UChar32 c) {
  if (c < 0) c = 0xFFFD;
  std::array<std::uint8_t, 4> buf{};
  std::int32_t n = 0;
  U8_APPEND_UNSAFE(buf.data(), n, c);
  out.append(reinterpret_cast<const char*>(buf.data()), static_cast<std::size_t>(n));
}

bool is_space(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

}  // namespace

bool is_stop_word(std::string_view token) {
  return std::binary_search(kStopWords.begin(), kStopWords.end(), token,
                            [](std::string_view a, std::string_view b) { return a < b; });
}

std::size_t stop_word_count() { return kStopWords.size(); }

std::vector<std::string> tokenize(std::string_view text, const TokenizerConfig& config) {
  std::vector<std::string> tokens;
  std::string current;
  std::size_t current_len = 0;

  auto flush = [&] {
    if (current_len >= config.min_token_length &&
        !(config.remove_stop_words && is_stop_word(current))) {
      tokens.push_back(current);
    }
    current.clear();
    current_len = 0;
  };

  const auto len = static_cast<std::int32_t>(text.size());
  std::int32_t i = 0;
  while (i < len) {
    const auto [c, next] = decode_at(text, i);
    if (is_word_codepoint(c)) {
      append_utf8(current, u_tolower(c));
      ++current_len;
    } else if ((c == '-' || c == '.') && current_len > 0 && next < len &&
               is_word_codepoint(decode_at(text, next).cp)) {
      current.push_back(static_cast<char>(c));
      ++current_len;
    } else if (current_len > 0) {
      flush();
    }
    i = next;
  }
  if (current_len > 0) flush();
  return tokens;
}

std::vector<std::string> ngrams(const std::vector<std::string>& tokens, std::size_t max_n) {
  std::vector<std::string> out;
  for (std::size_t n = 1; n <= max_n; ++n) {
    for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
      std::string gram = tokens[i];
      for (std::size_t j = 1; j < n; ++j) {
        gram += ' ';
        gram += tokens[i + j];
      }
      out.push_back(std::move(gram));
    }
  }
  return out;
}

std::string to_lower(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  const auto len = static_cast<std::int32_t>(text.size());
  std::int32_t i = 0;
  while (i < len) {
    const auto [c, next] = decode_at(text, i);
    if (c >= 0 && c < 0x80) {
      out.push_back(static_cast<char>(c >= 'A' && c <= 'Z' ? c - 'A' + 'a' : c));
    } else {
      append_utf8(out, u_tolower(c));
    }
    i = next;
  }
  return out;
}

std::string_view trim(std::string_view text) {
  std::size_t b = 0;
  std::size_t e = text.size();
  while (b < e && is_space(static_cast<unsigned char>(text[b]))) ++b;
  while (e > b && is_space(static_cast<unsigned char>(text[e - 1]))) --e;
  return text.substr(b, e - b);
}

std::string collapse_whitespace(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (const char ch : trim(text)) {
    if (is_space(static_cast<unsigned char>(ch))) {
      pending_space = true;
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(ch);
  }
  return out;
}

std::string normalize_for_dedup(std::string_view text) { return to_lower(collapse_whitespace(text)); }

std::uint64_t fnv1a64(std::string_view data, std::uint64_t basis) {
  std::uint64_t h = basis;
  for (const char ch : data) {
    h ^= static_cast<std::uint8_t>(ch);
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

bool contains_on_token_boundary(std::string_view haystack, std::string_view needle) {
  const std::string h = to_lower(haystack);
  const std::string n = to_lower(trim(needle));
  if (n.empty()) return false;
  const auto* p = reinterpret_cast<const std::uint8_t*>(h.data());
  const auto len = static_cast<std::int32_t>(h.size());
  for (std::size_t pos = h.find(n); pos != std::string::npos; pos = h.find(n, pos + 1)) {
    bool left_ok = true;
    if (pos > 0) {
      auto i = static_cast<std::int32_t>(pos);
      UChar32 c = 0;
      U8_PREV(p, 0, i, c);
      left_ok = !is_word_codepoint(c);
    }
    bool right_ok = true;
    const auto end = static_cast<std::int32_t>(pos + n.size());
    if (end < len) right_ok = !is_word_codepoint(decode_at(h, end).cp);
    if (left_ok && right_ok) return true;
  }
  return false;
}

}  // namespace docadopt
