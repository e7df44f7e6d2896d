#pragma once

#include <vector>

#include "docadopt/adoptmap/merge.hpp"
#include "docadopt/adoptmap/predict.hpp"
#include "docadopt/corpus/index.hpp"
#include "docadopt/corpus/store.hpp"
#include "docadopt/embed/provider.hpp"
#include "docadopt/topics/model.hpp"

namespace docadopt::testkit {

/// Checked-in configuration of the fixture pipeline (tests/fixtures/config).
topics::PipelineConfig fixture_pipeline_config();
std::vector<adoptmap::ToiSpec> fixture_tois();
adoptmap::Thresholds fixture_thresholds();
/// Hash embedder with default options, as selected by `--embed-kind hash`.
embed::ProviderSettings fixture_provider_settings();

/// mirror -> corpus -> index -> fit (UMAP, HDBSCAN) -> merge -> predict, all in-process.
struct FixturePipeline {
  corpus::CorpusStore store;
  corpus::DomainIndex index;
  topics::TopicModel model;
  adoptmap::MergedModel merged;
  std::vector<adoptmap::SectionPrediction> predictions;
};

FixturePipeline run_fixture_pipeline();

}  // namespace docadopt::testkit
