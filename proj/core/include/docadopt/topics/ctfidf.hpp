#pragma once

#include <set>
#include <string>
#include <vector>

#include "docadopt/topics/vectorizer.hpp"

namespace docadopt::topics {

/// Dense row-major matrix, one row per topic (class), one column per term.
using Matrix = std::vector<std::vector<double>>;

/// Class-based TF-IDF: W(t,c) = g(tf(t,c)) * ln(1 + A / f(t)), with f(t) the
/// total count of t over all classes and A the mean total count per class.
/// g is the identity, or sqrt of the L1-row-normalized counts when
/// reduce_frequent_words is set. Terms with f(t) = 0 get weight 0.
/// Throws InvalidArgument for a negative entry, a ragged matrix, or an
/// all-zero row (naming the row).
Matrix ctfidf(const Matrix& counts, bool reduce_frequent_words);

/// Sum sparse per-text counts into one dense row per group. labels[i] is the
/// row of text i, or negative to skip it.
Matrix group_counts(const std::vector<SparseCounts>& texts, const std::vector<int>& labels, std::size_t n_groups,
                    std::size_t n_terms);

/// Multiply the columns of the given terms by `multiplier`.
void apply_term_multiplier(Matrix& weights, const std::vector<TermId>& terms, double multiplier);

}  // namespace docadopt::topics
