#include "docadopt_testkit/pipeline.hpp"

#include "docadopt/corpus/builder.hpp"
#include "docadopt/serialize.hpp"
#include "docadopt/topics/reduce.hpp"
#include "docadopt_testkit/fixtures.hpp"

namespace docadopt::testkit {

topics::PipelineConfig fixture_pipeline_config() {
  auto config = read_json(fixture_path("config/pipeline.json")).get<topics::PipelineConfig>();
  config.validate();
  return config;
}

std::vector<adoptmap::ToiSpec> fixture_tois() {
  auto tois = read_json(fixture_path("config/tois.json")).get<std::vector<adoptmap::ToiSpec>>();
  adoptmap::validate_tois(tois);
  return tois;
}

adoptmap::Thresholds fixture_thresholds() {
  return read_json(fixture_path("config/thresholds.json")).get<adoptmap::Thresholds>();
}

embed::ProviderSettings fixture_provider_settings() {
  embed::ProviderSettings s;
  s.kind = "hash";
  return s;
}

FixturePipeline run_fixture_pipeline() {
  FixturePipeline p;
  p.store = corpus::build_from_mirror(fixture_path("mirror"));
  p.index = corpus::build_index(p.store);
  embed::ProviderStack embedder(fixture_provider_settings());
  topics::UmapReducer reducer;
  topics::HdbscanClusterer clusterer;
  const auto tois = fixture_tois();
  p.model = topics::fit(p.store.sentences(), embedder.provider(), reducer, clusterer, adoptmap::seed_from_tois(tois),
                        fixture_pipeline_config());
  p.merged = adoptmap::build_merged_model(p.model, tois, embedder.provider(), fixture_thresholds());
  p.predictions = adoptmap::predict_corpus(p.store, p.merged, embedder.provider());
  return p;
}

}  // namespace docadopt::testkit
