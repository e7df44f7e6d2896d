#include "docadopt/topics/reduce.hpp"

#include <cmath>
#include <numeric>
#include <unordered_map>

#include "docadopt/errors.hpp"

namespace docadopt::topics {

double euclidean(const embed::Vector& a, const embed::Vector& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

std::vector<int> canonical_labels(const std::vector<int>& labels) {
  std::unordered_map<int, int> remap;
  std::vector<int> out(labels.size(), -1);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0) continue;
    const auto [it, inserted] = remap.emplace(labels[i], static_cast<int>(remap.size()));
    out[i] = it->second;
  }
  return out;
}

Points TruncatingReducer::reduce(const Points& vectors, const PipelineConfig& config) {
  const auto k = static_cast<std::size_t>(config.n_components);
  Points out;
  out.reserve(vectors.size());
  for (const auto& v : vectors) {
    if (k > v.size()) {
      throw InvalidArgument("reduce: n_components " + std::to_string(k) + " exceeds input dimension " +
                            std::to_string(v.size()));
    }
    out.emplace_back(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k));
  }
  return out;
}

namespace {

struct UnionFind {
  explicit UnionFind(std::size_t n) : parent(n), size(n, 1) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size[a] < size[b]) std::swap(a, b);
    parent[b] = a;
    size[a] += size[b];
  }
  std::vector<std::size_t> parent, size;
};

}  // namespace

std::vector<int> ThresholdClusterer::cluster(const Points& points, const PipelineConfig& config) {
  const auto n = points.size();
  UnionFind uf(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (uf.find(i) != uf.find(j) && euclidean(points[i], points[j]) <= max_distance_) uf.unite(i, j);
    }
  }
  std::vector<int> labels(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    const auto root = uf.find(i);
    if (uf.size[root] >= static_cast<std::size_t>(config.min_cluster_size)) labels[i] = static_cast<int>(root);
  }
  return canonical_labels(labels);
}

}  // namespace docadopt::topics
