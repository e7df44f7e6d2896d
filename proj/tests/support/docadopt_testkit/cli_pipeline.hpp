#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "docadopt_testkit/pipeline.hpp"

namespace docadopt::testkit {

/// Runs cli::run in-process; throws std::runtime_error with the captured
/// stderr when the exit code is not 0.
std::string run_cli(const std::vector<std::string>& args);

/// The fixture pipeline through the command line, artifacts written under
/// `dir` (corpus/, model/, merged/, predictions.jsonl) and loaded back.
FixturePipeline run_cli_fixture_pipeline(const std::filesystem::path& dir);

}  // namespace docadopt::testkit
