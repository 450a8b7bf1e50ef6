#pragma once

#include <stdexcept>
#include <string>

namespace gdcomp {

enum class ErrorCode {
  InvalidArgument,
  OutOfRange,
  ValueExceedsWidth,
  Unsupported,
  NotFound,
  Io,
  Malformed,
  HashMismatch,
  CacheMiss,
  Corrupt,
};

/**
 * @brief Library error carrying a machine-readable code.
 */
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message) : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace gdcomp
