#pragma once

#include <stdexcept>
#include <string>

namespace docadopt {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller violated an operation's precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A lookup named something that does not exist (domain, path, project).
class NotFound : public Error {
 public:
  using Error::Error;
};

/// Malformed or truncated on-disk data.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// On-disk data written by a different format version.
class VersionError : public FormatError {
 public:
  VersionError(std::string what_file, int found, int supported)
      : FormatError(what_file + " has format version " + std::to_string(found) +
                    " but this build supports version " + std::to_string(supported)),
        found_(found),
        supported_(supported) {}

  int found() const noexcept { return found_; }
  int supported() const noexcept { return supported_; }

 private:
  int found_;
  int supported_;
};

/// Transient failure of a remote gateway; the caller may retry.
class RetriableError : public Error {
 public:
  using Error::Error;
};

}  // namespace docadopt
