#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "docadopt/adoptmap/merge.hpp"
#include "docadopt/corpus/store.hpp"
#include "docadopt/evalkit/groundtruth.hpp"
#include "docadopt/topics/config.hpp"
#include "docadopt/topics/reduce.hpp"

namespace docadopt::evalkit {

struct RunConfig {
  topics::PipelineConfig pipeline;
  adoptmap::Thresholds thresholds;

  bool operator==(const RunConfig&) const = default;
};

nlohmann::json to_json(const RunConfig& c);
RunConfig run_config_from_json(const nlohmann::json& j);

/// Copy of `base` with one hyperparameter replaced. The name may be any
/// PipelineConfig or Thresholds key; unknown names throw InvalidArgument.
RunConfig with_parameter(const RunConfig& base, const std::string& name, const nlohmann::json& value);

/// Hyperparameter name -> candidate values.
using Grid = std::map<std::string, std::vector<nlohmann::json>>;

/// Thresholds 0..1 step 0.1 and representation size 10..50 step 10.
Grid default_grid();

/// File layout: {"grid": {name: [values]}, "fixed": RunConfig (optional)}.
struct GridFile {
  Grid grid;
  RunConfig fixed;
};
GridFile load_grid(const std::filesystem::path& path);
nlohmann::json to_json(const GridFile& g);

class Evaluator {
 public:
  virtual ~Evaluator() = default;
  /// Must be safe to call concurrently when the sweep runs in parallel.
  virtual MetricsReport evaluate(const RunConfig& config) = 0;
};

struct SweepRow {
  std::string parameter;
  nlohmann::json value;
  RunConfig config;
  std::optional<MetricsReport> report;
  std::string error;

  bool ok() const { return report.has_value(); }
  double f1() const { return report ? report->f1 : 0.0; }
};

/// One-at-a-time sweep: every other hyperparameter stays at `fixed` while one
/// takes each of its grid values. One row per (parameter, value); a failing
/// configuration becomes a row with `error` set. Rows are sorted by weighted
/// F1 descending, then parameter name and value; failed rows go last.
std::vector<SweepRow> sweep(const Grid& grid, const RunConfig& fixed, Evaluator& evaluator, std::size_t parallelism = 1);

nlohmann::json to_json(const std::vector<SweepRow>& rows);
std::string format_table(const std::vector<SweepRow>& rows);

/// Fit -> merge -> predict -> score against groundtruth over one corpus.
/// Fitted topic models are cached by pipeline config, so threshold-only
/// variations reuse one fit.
class PipelineEvaluator final : public Evaluator {
 public:
  using ReducerFactory = std::function<std::unique_ptr<topics::Reducer>()>;
  using ClustererFactory = std::function<std::unique_ptr<topics::Clusterer>()>;

  PipelineEvaluator(const corpus::CorpusStore& store, std::vector<LabeledSection> gold,
                    std::vector<adoptmap::ToiSpec> tois, embed::EmbeddingProvider& provider,
                    ReducerFactory reducers, ClustererFactory clusterers);

  MetricsReport evaluate(const RunConfig& config) override;

  std::shared_ptr<const topics::TopicModel> fitted(const topics::PipelineConfig& config);
  adoptmap::MergedModel merged(const RunConfig& config);
  std::vector<adoptmap::SectionPrediction> predictions(const RunConfig& config);
  std::size_t fit_count() const;

 private:
  const corpus::CorpusStore& store_;
  std::vector<LabeledSection> gold_;
  std::vector<adoptmap::ToiSpec> tois_;
  embed::EmbeddingProvider& provider_;
  ReducerFactory reducers_;
  ClustererFactory clusterers_;
  mutable std::mutex mutex_;
  std::map<std::string, std::shared_ptr<const topics::TopicModel>> fits_;
  std::size_t fit_count_ = 0;
};

}  // namespace docadopt::evalkit
