#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "docadopt/corpus/builder.hpp"
#include "docadopt/corpus/index.hpp"
#include "docadopt/embed/provider.hpp"
#include "docadopt/evalkit/metrics.hpp"
#include "docadopt/ingest/mirror.hpp"
#include "docadopt/ingest/sections.hpp"
#include "docadopt/topics/ctfidf.hpp"
#include "docadopt/topics/reduce.hpp"
#include "docadopt/topics/representation.hpp"

namespace {

using namespace docadopt;

topics::Points blobs(std::size_t n, std::size_t dim, std::size_t centers, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 0.1);
  topics::Points out;
  for (std::size_t i = 0; i < n; ++i) {
    embed::Vector v(dim);
    for (auto& x : v) x = noise(rng);
    v[i % centers % dim] += 1.0;
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<std::string> sentences(std::size_t n) {
  static const std::vector<std::string> words{"license", "python", "release", "feature", "copyright", "windows",
                                              "maintainer", "plugin", "changelog", "platform", "api", "notice"};
  std::mt19937_64 rng(3);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) {
    std::string s;
    for (int w = 0; w < 10; ++w) s += words[rng() % words.size()] + " ";
    out.push_back(s);
  }
  return out;
}

void BM_Ctfidf(benchmark::State& state) {
  const auto topics_n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  topics::Matrix counts(topics_n, std::vector<double>(5000));
  for (auto& row : counts) {
    for (auto& x : row) x = rng() % 4 == 0 ? static_cast<double>(rng() % 10) : 0.0;
  }
  for (auto _ : state) benchmark::DoNotOptimize(topics::ctfidf(counts, true));
}
BENCHMARK(BM_Ctfidf)->Arg(10)->Arg(50);

void BM_HashEmbed(benchmark::State& state) {
  embed::HashEmbedder provider;
  const auto texts = sentences(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(provider.embed(texts));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_HashEmbed)->Arg(1000);

void BM_Umap(benchmark::State& state) {
  const auto points = blobs(static_cast<std::size_t>(state.range(0)), 32, 5, 2);
  topics::PipelineConfig config;
  topics::UmapReducer umap;
  for (auto _ : state) benchmark::DoNotOptimize(umap.reduce(points, config));
}
BENCHMARK(BM_Umap)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_Hdbscan(benchmark::State& state) {
  const auto points = blobs(static_cast<std::size_t>(state.range(0)), 20, 5, 3);
  topics::PipelineConfig config;
  topics::HdbscanClusterer hdbscan;
  for (auto _ : state) benchmark::DoNotOptimize(hdbscan.cluster(points, config));
}
BENCHMARK(BM_Hdbscan)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_Mmr(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> rel(n);
  for (auto& r : rel) r = u(rng);
  std::vector<std::vector<double>> sim(n, std::vector<double>(n));
  for (auto& row : sim) {
    for (auto& x : row) x = u(rng);
  }
  for (auto _ : state) benchmark::DoNotOptimize(topics::mmr_select(rel, sim, 0.7, 20));
}
BENCHMARK(BM_Mmr)->Arg(50)->Arg(200);

void BM_ExtractFixtureMirror(benchmark::State& state) {
  std::vector<Page> pages;
  ingest::for_each_mirrored_page(DOCADOPT_FIXTURE_DIR "/mirror", [&](Page&& p) { pages.push_back(std::move(p)); });
  for (auto _ : state) {
    for (const auto& p : pages) benchmark::DoNotOptimize(ingest::extract_sections(p));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(pages.size()));
}
BENCHMARK(BM_ExtractFixtureMirror);

void BM_TopTerms(benchmark::State& state) {
  static const auto index = corpus::build_index(corpus::build_from_mirror(DOCADOPT_FIXTURE_DIR "/mirror"));
  const std::string paragraph =
      "Tablewise reads CSV and Parquet files into typed frames, supports group-by aggregation and window functions.";
  for (auto _ : state) benchmark::DoNotOptimize(corpus::top_terms(paragraph, "data-science", index, 5));
}
BENCHMARK(BM_TopTerms);

void BM_WeightedMetrics(benchmark::State& state) {
  std::mt19937_64 rng(5);
  std::vector<std::size_t> preds(10000), gold(10000);
  for (auto& p : preds) p = rng() % 5;
  for (auto& g : gold) g = rng() % 5;
  for (auto _ : state) benchmark::DoNotOptimize(evalkit::weighted_metrics_indexed(preds, gold, 5));
}
BENCHMARK(BM_WeightedMetrics);

}  // namespace

BENCHMARK_MAIN();
