#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "docadopt/embed/provider.hpp"
#include "docadopt/embed/vector.hpp"
#include "docadopt/errors.hpp"
#include "docadopt/net/http.hpp"
#include "docadopt_testkit/fixtures.hpp"

namespace docadopt::embed {
namespace {

TEST(Vector, CosineProperties) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    Vector a(16), b(16);
    for (auto& x : a) x = u(rng);
    for (auto& x : b) x = u(rng);
    const double c = cosine(a, b);
    EXPECT_NEAR(c, cosine(b, a), 1e-15);
    Vector scaled = a;
    for (auto& x : scaled) x *= 3.7;
    EXPECT_NEAR(cosine(scaled, b), c, 1e-12);
    EXPECT_LE(std::abs(c), 1.0 + 1e-12);
  }
  EXPECT_EQ(cosine(Vector{0, 0}, Vector{1, 0}), 0.0);
  EXPECT_THROW(cosine(Vector{1}, Vector{1, 2}), InvalidArgument);
}

TEST(Vector, WeightedMean) {
  EXPECT_EQ(mean({{1, 2}, {3, 4}}), (Vector{2, 3}));
  const std::vector<double> w{3, 1};
  EXPECT_EQ(mean({{0, 4}, {4, 0}}, w), (Vector{1, 3}));
  const std::vector<double> zero{0, 0};
  EXPECT_THROW(mean({{1}, {2}}, zero), InvalidArgument);
  EXPECT_THROW(mean({}), InvalidArgument);
}

TEST(Vector, RoundToFloatIsExactInFloat) {
  Vector v{0.1, 1.0 / 3.0};
  round_to_float(v);
  EXPECT_EQ(v[0], static_cast<double>(static_cast<float>(0.1)));
}

TEST(HashEmbedder, DeterministicFiniteAndUnitLength) {
  HashEmbedder a, b;
  const std::vector<std::string> texts{"Licensed under the MIT license.", "Supports Python 3.9.", ""};
  const auto va = a.embed(texts);
  EXPECT_EQ(va, b.embed(texts));
  ASSERT_EQ(va.size(), 3u);
  for (std::size_t i = 0; i < 2; ++i) {
    ASSERT_EQ(va[i].size(), a.dim());
    for (const double x : va[i]) EXPECT_TRUE(std::isfinite(x));
    EXPECT_NEAR(norm(va[i]), 1.0, 1e-12);
  }
  EXPECT_EQ(norm(va[2]), 0.0);
}

TEST(HashEmbedder, BatchInvariant) {
  HashEmbedder e;
  const std::vector<std::string> texts{"alpha beta", "gamma delta", "alpha gamma"};
  const auto batch = e.embed(texts);
  for (std::size_t i = 0; i < texts.size(); ++i) {
    const auto alone = e.embed_one(texts[i]);
    for (std::size_t d = 0; d < alone.size(); ++d) EXPECT_NEAR(alone[d], batch[i][d], 1e-6);
  }
}

TEST(HashEmbedder, SharedTokensOverlap) {
  HashEmbedder e;
  const auto a = e.embed_one("license copyright notice");
  const auto b = e.embed_one("copyright notice retained");
  const auto c = e.embed_one("python wheels platforms");
  EXPECT_GT(cosine(a, b), cosine(a, c));
}

TEST(HashEmbedder, ModelIdEncodesOptions) {
  HashEmbedder::Options o;
  o.seed = 9;
  o.dim = 64;
  HashEmbedder e(o);
  EXPECT_NE(e.model_id(), HashEmbedder().model_id());
  EXPECT_EQ(e.embed_one("x y z").size(), 64u);
}

class CountingProvider final : public EmbeddingProvider {
 public:
  std::size_t calls = 0;
  const std::string& model_id() const override { return inner_.model_id(); }
  std::size_t dim() const override { return inner_.dim(); }
  std::vector<Vector> embed(const std::vector<std::string>& texts) override {
    calls += texts.size();
    return inner_.embed(texts);
  }

 private:
  HashEmbedder inner_;
};

TEST(CachedEmbedder, SecondCallHitsDisk) {
  testkit::TempDir dir("cache");
  CountingProvider inner;
  {
    CachedEmbedder cache(inner, dir.path());
    const auto first = cache.embed({"one two", "three four"});
    EXPECT_EQ(inner.calls, 2u);
    EXPECT_EQ(cache.misses(), 2u);
  }
  CachedEmbedder cache(inner, dir.path());
  const auto again = cache.embed({"three four", "one two"});
  EXPECT_EQ(inner.calls, 2u);
  EXPECT_EQ(cache.hits(), 2u);
  EXPECT_EQ(again[1], inner.embed({"one two"})[0]);
}

class ScriptedHttp final : public net::HttpClient {
 public:
  net::HttpResponse reply;
  net::HttpRequest last;
  net::HttpResponse send(const net::HttpRequest& request) override {
    last = request;
    return reply;
  }
};

TEST(RemoteEmbedder, PostsTextsAndValidatesShape) {
  ScriptedHttp http;
  http.reply = {200, "application/json", R"({"model_id":"m","vectors":[[1,0],[0,1]]})", ""};
  RemoteEmbedder remote(http, "http://127.0.0.1:1/embed", "m", 2);
  const auto v = remote.embed({"a", "b"});
  EXPECT_EQ(v, (std::vector<Vector>{{1, 0}, {0, 1}}));
  const auto sent = nlohmann::json::parse(http.last.body);
  EXPECT_EQ(sent["texts"], nlohmann::json::array({"a", "b"}));
  EXPECT_EQ(sent["model_id"], "m");

  http.reply = {200, "application/json", R"({"vectors":[[1,0,0],[0,1,0]]})", ""};
  EXPECT_THROW(remote.embed({"a", "b"}), Error);
  http.reply = {500, "text/plain", "down", ""};
  EXPECT_THROW(remote.embed({"a"}), Error);
}

TEST(ProviderSettings, JsonRoundTripAndDefaults) {
  ProviderSettings s;
  EXPECT_EQ(s.kind, "remote");
  EXPECT_EQ(s.model_id, "all-MiniLM-L6-v2");
  s.kind = "hash";
  s.dim = 128;
  nlohmann::json j = s;
  EXPECT_EQ(j.get<ProviderSettings>(), s);
  ProviderStack stack(s);
  EXPECT_EQ(stack.provider().dim(), 128u);
}

}  // namespace
}  // namespace docadopt::embed
