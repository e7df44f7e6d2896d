#pragma once

#include <span>
#include <vector>

namespace docadopt::embed {

using Vector = std::vector<double>;

double dot(std::span<const double> u, std::span<const double> v);
double norm(std::span<const double> v);

/// Cosine similarity. A zero vector on either side yields 0 (logged once per
/// process at warn level, then at debug). Throws InvalidArgument on dimension mismatch.
double cosine(std::span<const double> u, std::span<const double> v);

/// Arithmetic mean, or sum(w_i v_i) / sum(w_i) when weights are given.
/// Throws InvalidArgument on an empty list, mismatched dimensions or lengths,
/// negative weights, or all-zero weights.
Vector mean(const std::vector<Vector>& vectors);
Vector mean(const std::vector<Vector>& vectors, std::span<const double> weights);

/// Unit-length copy; a zero vector is returned unchanged.
Vector normalized(Vector v);

/// Round every component to the nearest float, so a float32 round trip is exact.
void round_to_float(Vector& v);

}  // namespace docadopt::embed
