#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include <spdlog/spdlog.h>

#include "docadopt/errors.hpp"
#include "docadopt/topics/reduce.hpp"

namespace docadopt::topics {

namespace {

struct Neighbor {
  std::size_t index;
  double distance;
};

// Exact cosine-distance neighbors, self excluded.
std::vector<std::vector<Neighbor>> nearest_neighbors(const Points& x, std::size_t k) {
  const auto n = x.size();
  std::vector<double> norms(n);
  for (std::size_t i = 0; i < n; ++i) norms[i] = embed::norm(x[i]);
  std::vector<std::vector<Neighbor>> out(n);
  std::vector<Neighbor> row;
  for (std::size_t i = 0; i < n; ++i) {
    row.clear();
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      double d = 1.0;
      if (norms[i] > 0.0 && norms[j] > 0.0) d = 1.0 - embed::dot(x[i], x[j]) / (norms[i] * norms[j]);
      row.push_back({j, std::max(0.0, d)});
    }
    const auto kk = std::min(k, row.size());
    std::partial_sort(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(kk), row.end(),
                      [](const Neighbor& a, const Neighbor& b) {
                        return a.distance != b.distance ? a.distance < b.distance : a.index < b.index;
                      });
    out[i].assign(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(kk));
  }
  return out;
}

// Per-point (rho, sigma) so that sum_j exp(-(d_j - rho) / sigma) = log2(n_neighbors).
std::pair<double, double> smooth_knn(const std::vector<Neighbor>& nbrs, double target, double mean_all) {
  double rho = 0.0;
  for (const auto& nb : nbrs) {
    if (nb.distance > 0.0) {
      rho = nb.distance;
      break;
    }
  }
  double lo = 0.0, hi = std::numeric_limits<double>::infinity(), mid = 1.0;
  for (int iter = 0; iter < 64; ++iter) {
    double psum = 0.0;
    for (const auto& nb : nbrs) {
      const double d = nb.distance - rho;
      psum += d > 0.0 ? std::exp(-d / mid) : 1.0;
    }
    if (std::abs(psum - target) < 1e-5) break;
    if (psum > target) {
      hi = mid;
      mid = (lo + hi) / 2.0;
    } else {
      lo = mid;
      mid = std::isinf(hi) ? mid * 2.0 : (lo + hi) / 2.0;
    }
  }
  double mean_i = 0.0;
  for (const auto& nb : nbrs) mean_i += nb.distance;
  if (!nbrs.empty()) mean_i /= static_cast<double>(nbrs.size());
  const double floor = 1e-3 * (rho > 0.0 ? mean_i : mean_all);
  return {rho, std::max(mid, floor)};
}

double clip(double g) { return std::clamp(g, -4.0, 4.0); }

}  // namespace

std::pair<double, double> fit_umap_curve(double spread, double min_dist) {
  constexpr int kSamples = 300;
  std::vector<double> xs(kSamples), ys(kSamples);
  for (int i = 0; i < kSamples; ++i) {
    xs[i] = spread * 3.0 * i / (kSamples - 1);
    ys[i] = xs[i] < min_dist ? 1.0 : std::exp(-(xs[i] - min_dist) / spread);
  }
  auto residuals = [&](double a, double b) {
    double s = 0.0;
    for (int i = 0; i < kSamples; ++i) {
      const double f = 1.0 / (1.0 + a * std::pow(xs[i], 2.0 * b));
      s += (f - ys[i]) * (f - ys[i]);
    }
    return s;
  };
  // Levenberg-Marquardt on (a, b).
  double a = 1.0, b = 1.0, lambda = 1e-3;
  double cost = residuals(a, b);
  for (int iter = 0; iter < 500; ++iter) {
    double jaa = 0, jab = 0, jbb = 0, ga = 0, gb = 0;
    for (int i = 0; i < kSamples; ++i) {
      if (xs[i] <= 0.0) continue;
      const double p = std::pow(xs[i], 2.0 * b);
      const double denom = 1.0 + a * p;
      const double f = 1.0 / denom;
      const double r = f - ys[i];
      const double da = -p / (denom * denom);
      const double db = -a * p * 2.0 * std::log(xs[i]) / (denom * denom);
      jaa += da * da;
      jab += da * db;
      jbb += db * db;
      ga += da * r;
      gb += db * r;
    }
    const double m00 = jaa * (1.0 + lambda), m11 = jbb * (1.0 + lambda), m01 = jab;
    const double det = m00 * m11 - m01 * m01;
    if (det == 0.0) break;
    const double step_a = -(m11 * ga - m01 * gb) / det;
    const double step_b = -(m00 * gb - m01 * ga) / det;
    const double na = a + step_a, nb = b + step_b;
    const double ncost = (na > 0.0 && nb > 0.0) ? residuals(na, nb) : std::numeric_limits<double>::infinity();
    if (ncost < cost) {
      const bool converged = cost - ncost < 1e-14;
      a = na;
      b = nb;
      cost = ncost;
      lambda *= 0.3;
      if (converged) break;
    } else {
      lambda *= 10.0;
      if (lambda > 1e12) break;
    }
  }
  return {a, b};
}

Points UmapReducer::reduce(const Points& vectors, const PipelineConfig& config) {
  const auto n = vectors.size();
  const auto dim = static_cast<std::size_t>(config.n_components);
  for (const auto& v : vectors) {
    if (dim > v.size()) {
      throw InvalidArgument("reduce: n_components " + std::to_string(dim) + " exceeds input dimension " +
                            std::to_string(v.size()));
    }
  }
  std::mt19937_64 rng(config.random_seed);
  std::uniform_real_distribution<double> init(-10.0, 10.0);
  Points y(n, embed::Vector(dim));
  for (auto& row : y) {
    for (auto& c : row) c = init(rng);
  }
  if (n < 3) return y;

  // Fuzzy simplicial set.
  const auto k = std::min<std::size_t>(static_cast<std::size_t>(config.n_neighbors) - 1, n - 1);
  const auto knn = nearest_neighbors(vectors, k);
  double mean_all = 0.0;
  std::size_t count = 0;
  for (const auto& row : knn) {
    for (const auto& nb : row) {
      mean_all += nb.distance;
      ++count;
    }
  }
  mean_all /= static_cast<double>(std::max<std::size_t>(count, 1));
  const double target = std::log2(static_cast<double>(config.n_neighbors));

  std::map<std::pair<std::size_t, std::size_t>, std::pair<double, double>> pair_weights;  // (i<j) -> (w_ij, w_ji)
  for (std::size_t i = 0; i < n; ++i) {
    const auto [rho, sigma] = smooth_knn(knn[i], target, mean_all);
    for (const auto& nb : knn[i]) {
      const double d = nb.distance - rho;
      const double w = d > 0.0 ? std::exp(-d / sigma) : 1.0;
      auto& slot = pair_weights[{std::min(i, nb.index), std::max(i, nb.index)}];
      (i < nb.index ? slot.first : slot.second) = w;
    }
  }

  struct Edge {
    std::size_t head, tail;
    double weight;
  };
  std::vector<Edge> edges;
  for (const auto& [key, w] : pair_weights) {
    const double p = w.first + w.second - w.first * w.second;
    if (p <= 0.0) continue;
    edges.push_back({key.first, key.second, p});
    edges.push_back({key.second, key.first, p});
  }
  if (edges.empty()) return y;

  const int n_epochs = options_.n_epochs > 0 ? options_.n_epochs : (n > 10'000 ? 200 : 500);
  double max_w = 0.0;
  for (const auto& e : edges) max_w = std::max(max_w, e.weight);
  std::erase_if(edges, [&](const Edge& e) { return e.weight < max_w / n_epochs; });

  const auto [a, b] = fit_umap_curve(options_.spread, config.min_dist);
  const auto m = edges.size();
  std::vector<double> eps(m), next(m), eps_neg(m), next_neg(m);
  for (std::size_t e = 0; e < m; ++e) {
    eps[e] = max_w / edges[e].weight;
    next[e] = eps[e];
    eps_neg[e] = eps[e] / options_.negative_sample_rate;
    next_neg[e] = eps_neg[e];
  }

  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (int epoch = 0; epoch < n_epochs; ++epoch) {
    const double alpha = options_.learning_rate * (1.0 - static_cast<double>(epoch) / n_epochs);
    for (std::size_t e = 0; e < m; ++e) {
      if (next[e] > epoch) continue;
      auto& cur = y[edges[e].head];
      auto& oth = y[edges[e].tail];
      double d2 = 0.0;
      for (std::size_t c = 0; c < dim; ++c) d2 += (cur[c] - oth[c]) * (cur[c] - oth[c]);
      if (d2 > 0.0) {
        const double coeff = -2.0 * a * b * std::pow(d2, b - 1.0) / (a * std::pow(d2, b) + 1.0);
        for (std::size_t c = 0; c < dim; ++c) {
          const double g = clip(coeff * (cur[c] - oth[c]));
          cur[c] += g * alpha;
          oth[c] -= g * alpha;
        }
      }
      next[e] += eps[e];

      const auto n_neg = static_cast<int>((epoch - next_neg[e]) / eps_neg[e]);
      for (int p = 0; p < n_neg; ++p) {
        const auto kidx = pick(rng);
        if (kidx == edges[e].head) continue;
        const auto& neg = y[kidx];
        double nd2 = 0.0;
        for (std::size_t c = 0; c < dim; ++c) nd2 += (cur[c] - neg[c]) * (cur[c] - neg[c]);
        const double coeff = nd2 > 0.0 ? 2.0 * b / ((0.001 + nd2) * (a * std::pow(nd2, b) + 1.0)) : 0.0;
        for (std::size_t c = 0; c < dim; ++c) {
          const double g = coeff > 0.0 ? clip(coeff * (cur[c] - neg[c])) : 4.0;
          cur[c] += g * alpha;
        }
      }
      next_neg[e] += n_neg * eps_neg[e];
    }
  }
  spdlog::debug("umap: {} points, {} edges, {} epochs, a={:.4f} b={:.4f}", n, m, n_epochs, a, b);
  return y;
}

}  // namespace docadopt::topics
