#pragma once

#include <stdexcept>
#include <string>

namespace hocomp {

enum class ErrorCode {
  invalid_argument,
  not_on_boundary,
  endpoint_in_obstacle,
  disconnected,
  resource_limit,
  internal,
};

/// Exception carrying a machine-readable code; the C API maps codes to
/// status values and the CLI maps those to exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

const char* to_string(ErrorCode code) noexcept;

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool condition, const std::string& what) {
  if (!condition) fail(ErrorCode::invalid_argument, what);
}

}  // namespace hocomp
