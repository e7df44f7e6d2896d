#include "docadopt/evalkit/sweep.hpp"

#include <algorithm>
#include <cstdio>
#include <future>

#include <spdlog/spdlog.h>

#include "docadopt/adoptmap/predict.hpp"
#include "docadopt/errors.hpp"
#include "docadopt/serialize.hpp"
#include "docadopt/topics/model.hpp"

namespace docadopt::evalkit {

using nlohmann::json;

json to_json(const RunConfig& c) { return json{{"pipeline", c.pipeline}, {"thresholds", c.thresholds}}; }

RunConfig run_config_from_json(const json& j) {
  for (const auto& [key, value] : j.items()) {
    if (key != "pipeline" && key != "thresholds") throw InvalidArgument("run config: unknown key '" + key + "'");
  }
  RunConfig c;
  if (j.contains("pipeline")) c.pipeline = j.at("pipeline").get<topics::PipelineConfig>();
  if (j.contains("thresholds")) c.thresholds = j.at("thresholds").get<adoptmap::Thresholds>();
  return c;
}

RunConfig with_parameter(const RunConfig& base, const std::string& name, const json& value) {
  json pipeline = base.pipeline;
  json thresholds = base.thresholds;
  if (thresholds.contains(name)) {
    thresholds[name] = value;
  } else if (pipeline.contains(name)) {
    pipeline[name] = value;
  } else {
    throw InvalidArgument("unknown hyperparameter '" + name + "'");
  }
  RunConfig out;
  try {
    out.pipeline = pipeline.get<topics::PipelineConfig>();
    out.thresholds = thresholds.get<adoptmap::Thresholds>();
  } catch (const json::exception& e) {
    throw InvalidArgument("hyperparameter '" + name + "': " + e.what());
  }
  return out;
}

Grid default_grid() {
  Grid g;
  for (int i = 0; i <= 10; ++i) {
    g["topics_similarity"].push_back(i / 10.0);
    g["reduction_min_similarity"].push_back(i / 10.0);
  }
  for (int size = 10; size <= 50; size += 10) g["topic_representation_size"].push_back(size);
  return g;
}

GridFile load_grid(const std::filesystem::path& path) {
  const auto j = read_json(path);
  GridFile g;
  try {
    for (const auto& [name, values] : j.at("grid").items()) {
      if (!values.is_array() || values.empty()) throw FormatError(path.string() + ": grid '" + name + "' needs values");
      g.grid[name] = values.get<std::vector<json>>();
    }
    if (j.contains("fixed")) g.fixed = run_config_from_json(j.at("fixed"));
  } catch (const json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
  return g;
}

json to_json(const GridFile& g) {
  json grid = json::object();
  for (const auto& [name, values] : g.grid) grid[name] = values;
  return json{{"grid", grid}, {"fixed", to_json(g.fixed)}};
}

namespace {

SweepRow run_row(const std::string& name, const json& value, const RunConfig& fixed, Evaluator& evaluator) {
  SweepRow row;
  row.parameter = name;
  row.value = value;
  try {
    row.config = with_parameter(fixed, name, value);
    row.config.pipeline.validate();
    row.config.thresholds.validate();
    row.report = evaluator.evaluate(row.config);
  } catch (const std::exception& e) {
    row.error = e.what();
    spdlog::warn("sweep: {}={} failed: {}", name, value.dump(), row.error);
  }
  return row;
}

}  // namespace

std::vector<SweepRow> sweep(const Grid& grid, const RunConfig& fixed, Evaluator& evaluator, std::size_t parallelism) {
  std::vector<std::pair<std::string, json>> jobs;
  for (const auto& [name, values] : grid) {
    for (const auto& v : values) jobs.emplace_back(name, v);
  }
  std::vector<SweepRow> rows(jobs.size());
  parallelism = std::max<std::size_t>(1, parallelism);
  for (std::size_t start = 0; start < jobs.size(); start += parallelism) {
    const auto end = std::min(jobs.size(), start + parallelism);
    if (parallelism == 1) {
      rows[start] = run_row(jobs[start].first, jobs[start].second, fixed, evaluator);
      continue;
    }
    std::vector<std::future<SweepRow>> batch;
    for (std::size_t i = start; i < end; ++i) {
      batch.push_back(std::async(std::launch::async, run_row, std::cref(jobs[i].first), std::cref(jobs[i].second),
                                 std::cref(fixed), std::ref(evaluator)));
    }
    for (std::size_t i = start; i < end; ++i) rows[i] = batch[i - start].get();
  }

  std::stable_sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
    if (a.ok() != b.ok()) return a.ok();
    if (a.f1() != b.f1()) return a.f1() > b.f1();
    if (a.parameter != b.parameter) return a.parameter < b.parameter;
    return a.value < b.value;
  });
  return rows;
}

json to_json(const std::vector<SweepRow>& rows) {
  json out = json::array();
  for (const auto& r : rows) {
    json j{{"parameter", r.parameter}, {"value", r.value}, {"config", to_json(r.config)}};
    if (r.report) {
      j["f1"] = r.report->f1;
      j["precision"] = r.report->precision;
      j["recall"] = r.report->recall;
      j["status"] = "ok";
    } else {
      j["status"] = "failed";
      j["error"] = r.error;
    }
    out.push_back(std::move(j));
  }
  return out;
}

std::string format_table(const std::vector<SweepRow>& rows) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "%-28s %-10s %9s %9s %9s\n", "parameter", "value", "precision", "recall", "f1");
  out += line;
  for (const auto& r : rows) {
    if (r.report) {
      std::snprintf(line, sizeof line, "%-28s %-10s %9.4f %9.4f %9.4f\n", r.parameter.c_str(), r.value.dump().c_str(),
                    r.report->precision, r.report->recall, r.report->f1);
    } else {
      std::snprintf(line, sizeof line, "%-28s %-10s failed: %s\n", r.parameter.c_str(), r.value.dump().c_str(),
                    r.error.c_str());
    }
    out += line;
  }
  return out;
}

PipelineEvaluator::PipelineEvaluator(const corpus::CorpusStore& store, std::vector<LabeledSection> gold,
                                     std::vector<adoptmap::ToiSpec> tois, embed::EmbeddingProvider& provider,
                                     ReducerFactory reducers, ClustererFactory clusterers)
    : store_(store),
      gold_(std::move(gold)),
      tois_(std::move(tois)),
      provider_(provider),
      reducers_(std::move(reducers)),
      clusterers_(std::move(clusterers)) {
  if (gold_.empty()) throw InvalidArgument("evaluator: groundtruth is empty");
  adoptmap::validate_tois(tois_);
}

std::shared_ptr<const topics::TopicModel> PipelineEvaluator::fitted(const topics::PipelineConfig& config) {
  const auto key = json(config).dump();
  std::lock_guard lock(mutex_);
  if (const auto it = fits_.find(key); it != fits_.end()) return it->second;
  auto reducer = reducers_();
  auto clusterer = clusterers_();
  auto model = std::make_shared<const topics::TopicModel>(
      topics::fit(store_.sentences(), provider_, *reducer, *clusterer, adoptmap::seed_from_tois(tois_), config));
  ++fit_count_;
  fits_.emplace(key, model);
  return model;
}

adoptmap::MergedModel PipelineEvaluator::merged(const RunConfig& config) {
  const auto model = fitted(config.pipeline);
  return adoptmap::build_merged_model(*model, tois_, provider_, config.thresholds);
}

std::vector<adoptmap::SectionPrediction> PipelineEvaluator::predictions(const RunConfig& config) {
  return adoptmap::predict_corpus(store_, merged(config), provider_);
}

MetricsReport PipelineEvaluator::evaluate(const RunConfig& config) { return evalkit::evaluate(predictions(config), gold_); }

std::size_t PipelineEvaluator::fit_count() const {
  std::lock_guard lock(mutex_);
  return fit_count_;
}

}  // namespace docadopt::evalkit
