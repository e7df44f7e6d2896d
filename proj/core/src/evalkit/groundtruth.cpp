#include "docadopt/evalkit/groundtruth.hpp"

#include <set>
#include <unordered_map>

#include <spdlog/spdlog.h>

#include "docadopt/errors.hpp"
#include "docadopt/serialize.hpp"
#include "docadopt/text.hpp"

namespace docadopt::evalkit {

using adoptmap::Label;

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      if (any || !field.empty()) {
        row.push_back(std::move(field));
        rows.push_back(std::move(row));
      }
      row.clear();
      field.clear();
      any = false;
    } else {
      field += c;
      any = true;
    }
  }
  if (quoted) throw FormatError("csv: unterminated quoted field");
  if (any || !field.empty()) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

std::optional<Label> optional_label(const std::string& cell, const std::string& where) {
  const auto text = std::string(trim(cell));
  if (text.empty()) return std::nullopt;
  const auto label = adoptmap::parse_label(text);
  if (!label) throw FormatError(where + ": unknown label '" + text + "'");
  return label;
}

std::string quote(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::vector<LabeledSection> parse_groundtruth(const std::string& csv, const std::string& origin) {
  const auto rows = parse_csv(csv);
  static const std::vector<std::string> header{"section_id", "label_a", "label_b", "gold"};
  if (rows.empty()) throw FormatError(origin + ": empty file");
  std::vector<std::string> got;
  for (const auto& h : rows[0]) got.emplace_back(trim(h));
  if (got != header) throw FormatError(origin + ": header must be section_id,label_a,label_b,gold");

  std::vector<LabeledSection> out;
  std::set<std::string> ids;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto where = origin + ":" + std::to_string(r + 1);
    const auto& row = rows[r];
    if (row.size() != header.size()) throw FormatError(where + ": expected 4 columns");
    LabeledSection s;
    s.section_id = std::string(trim(row[0]));
    if (s.section_id.empty()) throw FormatError(where + ": empty section_id");
    if (!ids.insert(s.section_id).second) throw FormatError(where + ": duplicate section_id " + s.section_id);
    const auto a = optional_label(row[1], where);
    const auto b = optional_label(row[2], where);
    const auto gold = optional_label(row[3], where);
    if (a.has_value() != b.has_value()) throw FormatError(where + ": give both annotator labels or neither");
    if (a) {
      s.annotator_labels = std::make_pair(*a, *b);
      if (*a != *b) {
        if (gold && *gold != Label::Outlier) {
          spdlog::warn("{}: annotators disagree, gold {} replaced by Outlier", where, adoptmap::label_name(*gold));
        }
        s.gold_label = Label::Outlier;
      } else {
        if (gold && *gold != *a) throw FormatError(where + ": gold contradicts agreeing annotators");
        s.gold_label = *a;
      }
    } else {
      if (!gold) throw FormatError(where + ": no gold label");
      s.gold_label = *gold;
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<LabeledSection> load_groundtruth(const std::filesystem::path& path) {
  return parse_groundtruth(read_file(path), path.string());
}

std::string format_groundtruth(const std::vector<LabeledSection>& rows) {
  std::string out = "section_id,label_a,label_b,gold\n";
  for (const auto& r : rows) {
    out += quote(r.section_id) + ",";
    if (r.annotator_labels) {
      out += quote(adoptmap::label_name(r.annotator_labels->first)) + "," +
             quote(adoptmap::label_name(r.annotator_labels->second));
    } else {
      out += ",";
    }
    out += "," + quote(adoptmap::label_name(r.gold_label)) + "\n";
  }
  return out;
}

std::pair<std::vector<Label>, std::vector<Label>> align(const std::vector<adoptmap::SectionPrediction>& predictions,
                                                        const std::vector<LabeledSection>& gold) {
  std::unordered_map<std::string, Label> by_id;
  for (const auto& p : predictions) by_id.emplace(p.section_id, p.label);
  std::pair<std::vector<Label>, std::vector<Label>> out;
  for (const auto& g : gold) {
    const auto it = by_id.find(g.section_id);
    if (it == by_id.end()) throw InvalidArgument("no prediction for labeled section " + g.section_id);
    out.first.push_back(it->second);
    out.second.push_back(g.gold_label);
  }
  return out;
}

MetricsReport evaluate(const std::vector<adoptmap::SectionPrediction>& predictions,
                       const std::vector<LabeledSection>& gold) {
  const auto [preds, labels] = align(predictions, gold);
  return weighted_metrics(preds, labels);
}

}  // namespace docadopt::evalkit
