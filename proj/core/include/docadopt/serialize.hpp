#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "docadopt/types.hpp"

namespace docadopt {

void to_json(nlohmann::json& j, const ProjectRef& v);
void from_json(const nlohmann::json& j, ProjectRef& v);
void to_json(nlohmann::json& j, const PageRecord& v);
void from_json(const nlohmann::json& j, PageRecord& v);
void to_json(nlohmann::json& j, const Section& v);
void from_json(const nlohmann::json& j, Section& v);
void to_json(nlohmann::json& j, const Sentence& v);
void from_json(const nlohmann::json& j, Sentence& v);

/// Whole-file helpers. Read failures and parse errors raise FormatError naming the file.
std::string read_file(const std::filesystem::path& path);
nlohmann::json read_json(const std::filesystem::path& path);

/// Write via a temporary sibling and rename, so readers never see a partial file.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);
void write_json(const std::filesystem::path& path, const nlohmann::json& value, int indent = 2);

}  // namespace docadopt
