#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace docadopt::ingest {

/// Rule-based, abbreviation-aware sentence segmentation.
///
/// Output pieces are trimmed slices of the input, so joining them with the
/// removed whitespace reproduces the input. Blank lines are hard boundaries.
std::vector<std::string> split_sentences(std::string_view text);

}  // namespace docadopt::ingest
