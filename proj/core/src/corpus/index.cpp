#include "docadopt/corpus/index.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <spdlog/spdlog.h>

#include "docadopt/errors.hpp"
#include "docadopt/ingest/sections.hpp"
#include "docadopt/serialize.hpp"

namespace docadopt::corpus {

using nlohmann::json;

std::vector<std::string> DomainIndex::domains() const {
  std::vector<std::string> out;
  for (const auto& [d, stats] : domains_) out.push_back(d);
  return out;
}

const DomainStats& DomainIndex::domain(const std::string& d) const {
  const auto it = domains_.find(d);
  if (it == domains_.end()) throw NotFound("domain '" + d + "' is not in the index");
  return it->second;
}

TermStats DomainIndex::stats(const std::string& term, const std::string& d) const {
  const auto& terms = domain(d).terms;
  const auto it = terms.find(term);
  return it == terms.end() ? TermStats{} : it->second;
}

std::uint64_t DomainIndex::df_dom(const std::string& term) const {
  const auto it = df_dom_.find(term);
  return it == df_dom_.end() ? 0 : it->second;
}

void DomainIndexBuilder::add_section(const std::string& domain, std::string_view text) {
  add_tokens(domain, tokenize(text, index_.tokenizer_));
}

void DomainIndexBuilder::add_tokens(const std::string& domain, const std::vector<std::string>& tokens) {
  auto& stats = index_.domains_[domain];
  ++stats.n_sections;
  std::set<std::string_view> seen;
  for (const auto& t : tokens) {
    auto& term = stats.terms[t];
    ++term.tf;
    if (seen.insert(t).second) ++term.df;
  }
}

void DomainIndexBuilder::declare_domain(const std::string& domain) { index_.domains_[domain]; }

DomainIndex DomainIndexBuilder::build() && {
  for (auto it = index_.domains_.begin(); it != index_.domains_.end();) {
    if (it->second.n_sections == 0) {
      spdlog::warn("index: domain '{}' has no sections and is excluded", it->first);
      it = index_.domains_.erase(it);
    } else {
      ++it;
    }
  }
  index_.df_dom_.clear();
  for (const auto& [d, stats] : index_.domains_) {
    for (const auto& [t, s] : stats.terms) ++index_.df_dom_[t];
  }
  return std::move(index_);
}

DomainIndex build_index(const CorpusStore& store, const TokenizerConfig& tokenizer) {
  if (!store.sealed()) throw InvalidArgument("build_index requires a sealed corpus store");
  DomainIndexBuilder builder(tokenizer);
  for (const auto& d : store.domains()) builder.declare_domain(d);
  for (const auto& section : store.sections()) {
    std::vector<std::string> tokens;
    for (const auto& sentence : ingest::section_sentences(section)) {
      for (auto& t : tokenize(sentence.text, tokenizer)) tokens.push_back(std::move(t));
    }
    builder.add_tokens(store.section_domain(section), tokens);
  }
  return std::move(builder).build();
}

double tech_score(const std::string& term, const std::string& domain, const DomainIndex& index) {
  const auto& d = index.domain(domain);
  const auto it = d.terms.find(term);
  if (it == d.terms.end() || it->second.tf == 0) return 0.0;
  const auto tf = static_cast<double>(it->second.tf);
  const auto df = static_cast<double>(it->second.df);
  const auto n = static_cast<double>(d.n_sections);
  const auto big_d = static_cast<double>(index.domain_count());
  const auto dd = static_cast<double>(index.df_dom(term));
  return (1.0 + std::log(tf)) * (df / n) * std::log(big_d / dd);
}

std::vector<std::pair<std::string, double>> top_terms(std::string_view paragraph, const std::string& domain,
                                                      const DomainIndex& index, std::size_t k) {
  if (k == 0) throw InvalidArgument("top_terms: k must be at least 1");
  index.domain(domain);
  std::set<std::string> tokens;
  for (auto& t : tokenize(paragraph, index.tokenizer())) tokens.insert(std::move(t));
  std::vector<std::pair<std::string, double>> scored;
  for (const auto& t : tokens) {
    const auto s = tech_score(t, domain, index);
    if (s > 0.0) scored.emplace_back(t, s);
  }
  std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  if (scored.size() > k) scored.resize(k);
  return scored;
}

void save_index(const DomainIndex& index, const std::filesystem::path& path) {
  json domains = json::object();
  for (const auto& d : index.domains()) {
    const auto& stats = index.domain(d);
    json terms = json::object();
    for (const auto& [t, s] : stats.terms) terms[t] = {s.tf, s.df};
    domains[d] = {{"n_sections", stats.n_sections}, {"terms", std::move(terms)}};
  }
  write_json(path,
             {{"format_version", kIndexFormatVersion},
              {"tokenizer",
               {{"remove_stop_words", index.tokenizer().remove_stop_words},
                {"min_token_length", index.tokenizer().min_token_length}}},
              {"domains", std::move(domains)},
              {"df_dom", index.interdomain_df()}},
             -1);
}

DomainIndex load_index(const std::filesystem::path& path) {
  const auto j = read_json(path);
  try {
    const int version = j.at("format_version").get<int>();
    if (version != kIndexFormatVersion) throw VersionError(path.string(), version, kIndexFormatVersion);
    DomainIndex index;
    index.tokenizer_.remove_stop_words = j.at("tokenizer").at("remove_stop_words");
    index.tokenizer_.min_token_length = j.at("tokenizer").at("min_token_length");
    for (const auto& [d, body] : j.at("domains").items()) {
      auto& stats = index.domains_[d];
      stats.n_sections = body.at("n_sections");
      for (const auto& [t, pair] : body.at("terms").items()) stats.terms[t] = TermStats{pair.at(0), pair.at(1)};
    }
    j.at("df_dom").get_to(index.df_dom_);
    return index;
  } catch (const json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

}  // namespace docadopt::corpus
