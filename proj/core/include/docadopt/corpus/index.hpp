#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "docadopt/corpus/store.hpp"
#include "docadopt/text.hpp"

namespace docadopt::corpus {

inline constexpr int kIndexFormatVersion = 1;

struct TermStats {
  std::uint64_t tf = 0;  // occurrences across the domain's sections
  std::uint64_t df = 0;  // sections containing the term

  bool operator==(const TermStats&) const = default;
};

struct DomainStats {
  std::uint64_t n_sections = 0;
  std::map<std::string, TermStats> terms;

  bool operator==(const DomainStats&) const = default;
};

/// Per-domain term statistics with section as the document unit, plus the
/// number of domains each term occurs in.
class DomainIndex {
 public:
  DomainIndex() = default;

  const TokenizerConfig& tokenizer() const { return tokenizer_; }
  std::vector<std::string> domains() const;
  std::size_t domain_count() const { return domains_.size(); }
  bool has_domain(const std::string& domain) const { return domains_.contains(domain); }
  bool in_vocabulary(const std::string& term) const { return df_dom_.contains(term); }
  std::size_t vocabulary_size() const { return df_dom_.size(); }
  const std::map<std::string, std::uint64_t>& interdomain_df() const { return df_dom_; }

  /// Throws NotFound for an unknown domain.
  const DomainStats& domain(const std::string& domain) const;
  std::uint64_t n_sections(const std::string& domain) const { return this->domain(domain).n_sections; }
  TermStats stats(const std::string& term, const std::string& domain) const;
  std::uint64_t df_dom(const std::string& term) const;

  bool operator==(const DomainIndex&) const = default;

 private:
  friend class DomainIndexBuilder;
  friend DomainIndex load_index(const std::filesystem::path&);

  TokenizerConfig tokenizer_;
  std::map<std::string, DomainStats> domains_;
  std::map<std::string, std::uint64_t> df_dom_;
};

/// Incremental construction; each add_* call is one section.
class DomainIndexBuilder {
 public:
  explicit DomainIndexBuilder(TokenizerConfig tokenizer = {}) { index_.tokenizer_ = tokenizer; }

  void add_section(const std::string& domain, std::string_view text);
  void add_tokens(const std::string& domain, const std::vector<std::string>& tokens);
  /// Registers a domain even if it never receives a section (it is then dropped).
  void declare_domain(const std::string& domain);
  DomainIndex build() &&;

 private:
  DomainIndex index_;
};

/// Requires a sealed store. Sections are counted through their sentences, so code
/// placeholders contribute nothing. Domains without sections are excluded from D with a warning.
DomainIndex build_index(const CorpusStore& store, const TokenizerConfig& tokenizer = {});

/// (1 + ln tf) * (df / n_sections) * ln(D / df_dom); 0 when the term is absent
/// from the domain or unknown. Throws NotFound for an unknown domain.
double tech_score(const std::string& term, const std::string& domain, const DomainIndex& index);

/// Highest-scoring distinct tokens of a paragraph, score > 0, descending
/// score then ascending term. Throws NotFound for an unknown domain.
std::vector<std::pair<std::string, double>> top_terms(std::string_view paragraph, const std::string& domain,
                                                      const DomainIndex& index, std::size_t k);

void save_index(const DomainIndex& index, const std::filesystem::path& path);
DomainIndex load_index(const std::filesystem::path& path);

}  // namespace docadopt::corpus
