#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "docadopt/embed/vector.hpp"
#include "docadopt/topics/config.hpp"

namespace docadopt::topics {

using Points = std::vector<embed::Vector>;

/// Reducer contract: output has config.n_components columns, one row per
/// input, deterministic for a fixed config.random_seed. Throws
/// InvalidArgument when n_components exceeds the input dimension.
class Reducer {
 public:
  virtual ~Reducer() = default;
  virtual std::string name() const = 0;
  virtual Points reduce(const Points& vectors, const PipelineConfig& config) = 0;
};

/// Keeps the first n_components coordinates (identity when they are all kept).
class TruncatingReducer final : public Reducer {
 public:
  std::string name() const override { return "truncate"; }
  Points reduce(const Points& vectors, const PipelineConfig& config) override;
};

/// Uniform manifold approximation: cosine k-nearest-neighbor graph, fuzzy
/// simplicial set, then SGD layout with negative sampling. Neighbor search is
/// exact (quadratic), which bounds practical corpus size to tens of thousands.
class UmapReducer final : public Reducer {
 public:
  struct Options {
    int n_epochs = 0;  // 0: 500 for small inputs, 200 above 10k points
    double learning_rate = 1.0;
    double spread = 1.0;
    int negative_sample_rate = 5;
  };

  UmapReducer() : UmapReducer(Options{}) {}
  explicit UmapReducer(Options options) : options_(options) {}

  std::string name() const override { return "umap"; }
  Points reduce(const Points& vectors, const PipelineConfig& config) override;

 private:
  Options options_;
};

/// Parameters (a, b) of the low-dimensional similarity 1 / (1 + a d^(2b)),
/// least-squares fitted to the target curve defined by spread and min_dist.
std::pair<double, double> fit_umap_curve(double spread, double min_dist);

/// Clusterer contract: one label per point, -1 for noise; every non-noise
/// cluster has at least config.min_cluster_size members; deterministic.
/// Labels are 0..k-1 numbered by first member.
class Clusterer {
 public:
  virtual ~Clusterer() = default;
  virtual std::string name() const = 0;
  virtual std::vector<int> cluster(const Points& points, const PipelineConfig& config) = 0;
};

/// Single-linkage components under a Euclidean distance cutoff; components
/// smaller than min_cluster_size become noise.
class ThresholdClusterer final : public Clusterer {
 public:
  explicit ThresholdClusterer(double max_distance) : max_distance_(max_distance) {}
  std::string name() const override { return "threshold"; }
  std::vector<int> cluster(const Points& points, const PipelineConfig& config) override;

 private:
  double max_distance_;
};

/// Hierarchical density clustering (mutual reachability MST, condensed tree,
/// excess-of-mass selection), Euclidean metric.
class HdbscanClusterer final : public Clusterer {
 public:
  struct Options {
    int min_samples = 0;  // 0: same as min_cluster_size
    bool allow_single_cluster = false;
  };

  HdbscanClusterer() : HdbscanClusterer(Options{}) {}
  explicit HdbscanClusterer(Options options) : options_(options) {}

  std::string name() const override { return "hdbscan"; }
  std::vector<int> cluster(const Points& points, const PipelineConfig& config) override;

 private:
  Options options_;
};

/// Relabel so clusters are numbered 0..k-1 by first member; noise stays -1.
std::vector<int> canonical_labels(const std::vector<int>& labels);

double euclidean(const embed::Vector& a, const embed::Vector& b);

}  // namespace docadopt::topics
