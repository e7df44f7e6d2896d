#include "docadopt/embed/vector.hpp"

#include <atomic>
#include <cmath>
#include <string>

#include <spdlog/spdlog.h>

#include "docadopt/errors.hpp"

namespace docadopt::embed {

namespace {

std::atomic<bool> zero_warned{false};

void require_same_dim(std::size_t a, std::size_t b) {
  if (a != b) throw InvalidArgument("vector dimensions differ: " + std::to_string(a) + " vs " + std::to_string(b));
}

}  // namespace

double dot(std::span<const double> u, std::span<const double> v) {
  require_same_dim(u.size(), v.size());
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
  return s;
}

double norm(std::span<const double> v) { return std::sqrt(dot(v, v)); }

double cosine(std::span<const double> u, std::span<const double> v) {
  require_same_dim(u.size(), v.size());
  double uv = 0.0, uu = 0.0, vv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    uv += u[i] * v[i];
    uu += u[i] * u[i];
    vv += v[i] * v[i];
  }
  if (uu == 0.0 || vv == 0.0) {
    if (!zero_warned.exchange(true)) {
      spdlog::warn("cosine of a zero vector is defined as 0");
    } else {
      spdlog::debug("cosine of a zero vector is defined as 0");
    }
    return 0.0;
  }
  const double c = uv / (std::sqrt(uu) * std::sqrt(vv));
  return c > 1.0 ? 1.0 : (c < -1.0 ? -1.0 : c);
}

Vector mean(const std::vector<Vector>& vectors) {
  const std::vector<double> ones(vectors.size(), 1.0);
  return mean(vectors, ones);
}

Vector mean(const std::vector<Vector>& vectors, std::span<const double> weights) {
  if (vectors.empty()) throw InvalidArgument("mean of an empty vector list");
  if (weights.size() != vectors.size()) throw InvalidArgument("mean: weights and vectors differ in length");
  double total = 0.0;
  for (const double w : weights) {
    if (!(w >= 0.0)) throw InvalidArgument("mean: weights must be non-negative");
    total += w;
  }
  if (total == 0.0) throw InvalidArgument("mean: weights are all zero");
  Vector out(vectors.front().size(), 0.0);
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    require_same_dim(out.size(), vectors[i].size());
    if (weights[i] == 0.0) continue;
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += weights[i] * vectors[i][k];
  }
  for (auto& x : out) x /= total;
  return out;
}

Vector normalized(Vector v) {
  const double n = norm(v);
  if (n > 0.0) {
    for (auto& x : v) x /= n;
  }
  return v;
}

void round_to_float(Vector& v) {
  for (auto& x : v) x = static_cast<double>(static_cast<float>(x));
}

}  // namespace docadopt::embed
