#pragma once

#include <filesystem>
#include <string>

namespace docadopt::testkit {

inline std::filesystem::path fixture_dir() { return DOCADOPT_FIXTURE_DIR; }
inline std::filesystem::path fixture_path(const std::string& relative) { return fixture_dir() / relative; }
inline std::filesystem::path repo_path(const std::string& relative) { return fixture_dir().parent_path().parent_path() / relative; }

std::string read_file(const std::filesystem::path& path);

/// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag);
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

}  // namespace docadopt::testkit
