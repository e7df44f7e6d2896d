#include <gtest/gtest.h>

#include <atomic>
#include <cmath>
#include <fstream>
#include <random>

#include "docadopt/errors.hpp"
#include "docadopt/ingest/discover.hpp"
#include "docadopt/evalkit/groundtruth.hpp"
#include "docadopt/evalkit/metrics.hpp"
#include "docadopt/evalkit/sweep.hpp"
#include "docadopt_testkit/fixtures.hpp"
#include "docadopt_testkit/oracles.hpp"
#include "docadopt_testkit/schema.hpp"
#include "docadopt_testkit/synthetic.hpp"

namespace docadopt::evalkit {
namespace {

using adoptmap::Label;

TEST(Metrics, HandCase) {
  // gold [A, A, B], pred [A, B, B]: A p=1 r=1/2 f=2/3; B p=1/2 r=1 f=2/3.
  const auto r = weighted_metrics_indexed({0, 1, 1}, {0, 0, 1}, 2);
  EXPECT_DOUBLE_EQ(r.f1, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(r.precision, (2 * 1.0 + 0.5) / 3);
  EXPECT_DOUBLE_EQ(r.recall, 2.0 / 3.0);
  EXPECT_EQ(r.confusion, (std::vector<std::vector<std::size_t>>{{1, 1}, {0, 1}}));
  EXPECT_EQ(r.total, 3u);
}

TEST(Metrics, MatchesRecountOracle) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng() % 6, len = 1 + rng() % 40;
    std::vector<std::size_t> preds(len), gold(len);
    for (auto& p : preds) p = rng() % n;
    for (auto& g : gold) g = rng() % n;
    const auto r = weighted_metrics_indexed(preds, gold, n);
    const auto o = testkit::metrics_oracle(preds, gold, n);
    for (std::size_t c = 0; c < n; ++c) {
      EXPECT_EQ(r.per_class[c].precision, o.precision[c]);
      EXPECT_EQ(r.per_class[c].recall, o.recall[c]);
      EXPECT_EQ(r.per_class[c].f1, o.f1[c]);
      EXPECT_EQ(r.per_class[c].support, o.support[c]);
    }
    EXPECT_EQ(r.precision, o.weighted_precision);
    EXPECT_EQ(r.recall, o.weighted_recall);
    EXPECT_EQ(r.f1, o.weighted_f1);
  }
}

TEST(Metrics, RejectsBadInput) {
  EXPECT_THROW(weighted_metrics_indexed({0}, {0, 1}, 2), InvalidArgument);
  EXPECT_THROW(weighted_metrics_indexed({}, {}, 2), InvalidArgument);
  EXPECT_THROW(weighted_metrics_indexed({2}, {0}, 2), InvalidArgument);
}

TEST(Metrics, LabelReportJsonIsSchemaValid) {
  const auto r = weighted_metrics({Label::License, Label::Outlier, Label::Compatibility},
                                  {Label::License, Label::License, Label::Compatibility});
  EXPECT_EQ(r.confusion[1][0], 1u);
  const auto schema = testkit::load_json(testkit::repo_path("schemas/metrics_report.schema.json"));
  EXPECT_EQ(testkit::validate_schema(schema, to_json(r)), std::vector<std::string>{});
  const auto table = format_table(r);
  EXPECT_NE(table.find("Project's Maintenance"), std::string::npos);
  EXPECT_NE(table.find("weighted"), std::string::npos);
}

TEST(Groundtruth, CsvQuoting) {
  const auto rows = parse_csv("a,\"b,c\",\"say \"\"hi\"\"\"\r\nd,,e\n");
  EXPECT_EQ(rows, (std::vector<std::vector<std::string>>{{"a", "b,c", "say \"hi\""}, {"d", "", "e"}}));
}

TEST(Groundtruth, DisagreementForcesOutlier) {
  const auto rows = parse_groundtruth(
      "section_id,label_a,label_b,gold\n"
      "s1,License,License,\n"
      "s2,License,Compatibility,Outlier\n"
      "s3,,,\"Project's Maintenance\"\n"
      "s4,License,Compatibility,\n");
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0].gold_label, Label::License);
  EXPECT_EQ(rows[1].gold_label, Label::Outlier);
  EXPECT_EQ(rows[2].gold_label, Label::ProjectsMaintenance);
  EXPECT_FALSE(rows[2].annotator_labels.has_value());
  EXPECT_EQ(rows[3].gold_label, Label::Outlier);
  EXPECT_EQ(parse_groundtruth(format_groundtruth(rows)), rows);
}

TEST(Groundtruth, FormatErrors) {
  const std::string header = "section_id,label_a,label_b,gold\n";
  EXPECT_THROW(parse_groundtruth(header + "s1,License,License,\ns1,License,License,\n"), FormatError);
  EXPECT_THROW(parse_groundtruth(header + "s1,Licence,Licence,\n"), FormatError);
  EXPECT_THROW(parse_groundtruth(header + "s1,License,License,Compatibility\n"), FormatError);
  EXPECT_THROW(parse_groundtruth(header + "s1,,,\n"), FormatError);
  EXPECT_THROW(parse_groundtruth("id,gold\ns1,License\n"), FormatError);
}

TEST(Groundtruth, FixtureGoldShape) {
  const auto rows = load_groundtruth(testkit::fixture_path("gold.csv"));
  EXPECT_EQ(rows.size(), 55u);
  std::size_t disagreements = 0;
  for (const auto& r : rows) {
    if (r.annotator_labels && r.annotator_labels->first != r.annotator_labels->second) {
      ++disagreements;
      EXPECT_EQ(r.gold_label, Label::Outlier);
    }
  }
  EXPECT_EQ(disagreements, 6u);
}

TEST(Groundtruth, AlignRequiresPredictions) {
  const std::vector<LabeledSection> gold{{"a", Label::License, {}}, {"b", Label::Outlier, {}}};
  std::vector<adoptmap::SectionPrediction> preds(2);
  preds[0].section_id = "b";
  preds[1].section_id = "a";
  preds[1].label = Label::License;
  const auto [p, g] = align(preds, gold);
  EXPECT_EQ(p, (std::vector<Label>{Label::License, Label::Outlier}));
  EXPECT_EQ(g, (std::vector<Label>{Label::License, Label::Outlier}));
  EXPECT_EQ(evaluate(preds, gold).f1, 1.0);
  preds.pop_back();
  EXPECT_THROW(align(preds, gold), InvalidArgument);
}

TEST(Sweep, DefaultGridShape) {
  const auto g = default_grid();
  ASSERT_EQ(g.size(), 3u);
  EXPECT_EQ(g.at("topics_similarity").size(), 11u);
  EXPECT_EQ(g.at("reduction_min_similarity").size(), 11u);
  EXPECT_EQ(g.at("topic_representation_size"),
            (std::vector<nlohmann::json>{10, 20, 30, 40, 50}));
}

TEST(Sweep, WithParameter) {
  const RunConfig base;
  EXPECT_EQ(with_parameter(base, "min_cluster_size", 12).pipeline.min_cluster_size, 12);
  EXPECT_EQ(with_parameter(base, "topics_similarity", 0.4).thresholds.topics_similarity, 0.4);
  EXPECT_THROW(with_parameter(base, "no_such_knob", 1), InvalidArgument);
  EXPECT_EQ(run_config_from_json(to_json(base)), base);
}

class FakeEvaluator final : public Evaluator {
 public:
  std::atomic<int> calls{0};
  MetricsReport evaluate(const RunConfig& c) override {
    ++calls;
    if (c.thresholds.topics_similarity == 0.9) throw InvalidArgument("too strict");
    MetricsReport r;
    r.f1 = 1.0 - std::abs(c.thresholds.topics_similarity - 0.3) - c.thresholds.reduction_min_similarity / 10;
    r.total = 1;
    return r;
  }
};

TEST(Sweep, OneRowPerValueSortedAndErrorsLast) {
  const Grid grid{{"topics_similarity", {0.1, 0.3, 0.9}}, {"reduction_min_similarity", {0.0, 0.5}}};
  FakeEvaluator fake;
  const auto rows = sweep(grid, RunConfig{}, fake, 1);
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_EQ(fake.calls, 5);
  EXPECT_FALSE(rows.back().ok());
  EXPECT_EQ(rows.back().error, "too strict");
  for (std::size_t i = 1; i + 1 < rows.size(); ++i) EXPECT_GE(rows[i - 1].f1(), rows[i].f1());
  for (const auto& r : rows) {
    const RunConfig expected = with_parameter(RunConfig{}, r.parameter, r.value);
    EXPECT_EQ(r.config, expected);
  }
  FakeEvaluator again;
  EXPECT_EQ(to_json(sweep(grid, RunConfig{}, again, 3)), to_json(rows));
}

TEST(Sweep, GridFileRoundTrip) {
  testkit::TempDir dir("grid");
  GridFile g{default_grid(), RunConfig{}};
  g.fixed.pipeline.min_cluster_size = 12;
  {
    std::ofstream out(dir / "grid.json");
    out << to_json(g).dump(2);
  }
  const auto loaded = load_grid(dir / "grid.json");
  EXPECT_EQ(loaded.grid, g.grid);
  EXPECT_EQ(loaded.fixed, g.fixed);
}

TEST(Sweep, PipelineEvaluatorReusesFitsAcrossThresholds) {
  const auto corpus = testkit::make_synthetic_corpus();
  embed::HashEmbedder provider(testkit::synthetic_embedder_options());
  PipelineEvaluator evaluator(
      corpus.store, corpus.gold, corpus.tois, provider, [] { return std::make_unique<topics::TruncatingReducer>(); },
      [] { return std::make_unique<topics::HdbscanClusterer>(); });
  RunConfig fixed;
  fixed.pipeline = testkit::synthetic_pipeline_config();
  const Grid grid{{"topics_similarity", {0.2, 0.3}}, {"topic_representation_size", {10, 20}}};
  const auto rows = sweep(grid, fixed, evaluator);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(evaluator.fit_count(), 1u);
  for (const auto& r : rows) {
    ASSERT_TRUE(r.ok()) << r.error;
    EXPECT_GE(r.f1(), 0.9);
  }
}

TEST(ShippedConfig, FilesEqualCodeDefaults) {
  const auto dir = testkit::repo_path("config");
  EXPECT_EQ(testkit::load_json(dir / "pipeline.json").get<topics::PipelineConfig>(), topics::PipelineConfig{});
  EXPECT_EQ(testkit::load_json(dir / "thresholds.json").get<adoptmap::Thresholds>(), adoptmap::Thresholds{});
  EXPECT_EQ(testkit::load_json(dir / "tois.json").get<std::vector<adoptmap::ToiSpec>>(), adoptmap::default_tois());
  const auto grid = load_grid(dir / "grid_default.json");
  EXPECT_EQ(grid.grid, default_grid());
  EXPECT_EQ(grid.fixed, RunConfig{});
  EXPECT_NO_THROW(ingest::load_domain_list(dir / "domains.txt"));
}

}  // namespace
}  // namespace docadopt::evalkit
