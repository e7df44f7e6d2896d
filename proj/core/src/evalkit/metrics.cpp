#include "docadopt/evalkit/metrics.hpp"

#include <cstdio>

#include "docadopt/errors.hpp"

namespace docadopt::evalkit {

using nlohmann::json;

namespace {

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

IndexedReport weighted_metrics_indexed(const std::vector<std::size_t>& preds, const std::vector<std::size_t>& gold,
                                       std::size_t n_classes) {
  if (preds.size() != gold.size()) {
    throw InvalidArgument("weighted_metrics: " + std::to_string(preds.size()) + " predictions for " +
                          std::to_string(gold.size()) + " gold labels");
  }
  if (gold.empty()) throw InvalidArgument("weighted_metrics: no labels");

  IndexedReport r;
  r.total = gold.size();
  r.confusion.assign(n_classes, std::vector<std::size_t>(n_classes, 0));
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (gold[i] >= n_classes || preds[i] >= n_classes) throw InvalidArgument("weighted_metrics: class index out of range");
    ++r.confusion[gold[i]][preds[i]];
  }

  r.per_class.resize(n_classes);
  for (std::size_t c = 0; c < n_classes; ++c) {
    std::size_t predicted = 0;
    for (std::size_t g = 0; g < n_classes; ++g) predicted += r.confusion[g][c];
    std::size_t support = 0;
    for (std::size_t p = 0; p < n_classes; ++p) support += r.confusion[c][p];
    const std::size_t tp = r.confusion[c][c];
    auto& m = r.per_class[c];
    m.support = support;
    m.precision = ratio(tp, predicted);
    m.recall = ratio(tp, support);
    m.f1 = m.precision + m.recall == 0.0 ? 0.0 : 2.0 * m.precision * m.recall / (m.precision + m.recall);
  }

  for (const auto& m : r.per_class) {
    const auto w = static_cast<double>(m.support);
    r.precision += w * m.precision;
    r.recall += w * m.recall;
    r.f1 += w * m.f1;
  }
  const auto total = static_cast<double>(r.total);
  r.precision /= total;
  r.recall /= total;
  r.f1 /= total;
  return r;
}

MetricsReport weighted_metrics(const std::vector<adoptmap::Label>& preds, const std::vector<adoptmap::Label>& gold) {
  std::vector<std::size_t> p;
  std::vector<std::size_t> g;
  for (const auto l : preds) p.push_back(adoptmap::label_index(l));
  for (const auto l : gold) g.push_back(adoptmap::label_index(l));
  const auto ir = weighted_metrics_indexed(p, g, adoptmap::kLabelCount);
  MetricsReport r;
  for (std::size_t i = 0; i < adoptmap::kLabelCount; ++i) {
    r.per_label[i] = ir.per_class[i];
    for (std::size_t j = 0; j < adoptmap::kLabelCount; ++j) r.confusion[i][j] = ir.confusion[i][j];
  }
  r.precision = ir.precision;
  r.recall = ir.recall;
  r.f1 = ir.f1;
  r.total = ir.total;
  return r;
}

json to_json(const MetricsReport& r) {
  json per_label = json::object();
  json confusion = json::object();
  for (const auto label : adoptmap::kLabels) {
    const auto& m = r.per_label[adoptmap::label_index(label)];
    const std::string name(adoptmap::label_name(label));
    per_label[name] = {{"precision", m.precision}, {"recall", m.recall}, {"f1", m.f1}, {"support", m.support}};
    json row = json::object();
    for (const auto pred : adoptmap::kLabels) {
      row[std::string(adoptmap::label_name(pred))] = r.confusion[adoptmap::label_index(label)][adoptmap::label_index(pred)];
    }
    confusion[name] = row;
  }
  return json{{"per_label", per_label},
              {"weighted", {{"precision", r.precision}, {"recall", r.recall}, {"f1", r.f1}}},
              {"total", r.total},
              {"confusion", confusion}};
}

std::string format_table(const MetricsReport& r) {
  std::string out;
  char line[128];
  std::snprintf(line, sizeof line, "%-24s %9s %9s %9s %8s\n", "label", "precision", "recall", "f1", "support");
  out += line;
  for (const auto label : adoptmap::kLabels) {
    const auto& m = r.per_label[adoptmap::label_index(label)];
    std::snprintf(line, sizeof line, "%-24s %9.4f %9.4f %9.4f %8zu\n", std::string(adoptmap::label_name(label)).c_str(),
                  m.precision, m.recall, m.f1, m.support);
    out += line;
  }
  std::snprintf(line, sizeof line, "%-24s %9.4f %9.4f %9.4f %8zu\n", "weighted avg", r.precision, r.recall, r.f1, r.total);
  out += line;
  return out;
}

}  // namespace docadopt::evalkit
