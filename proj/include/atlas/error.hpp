#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace atlas {

enum class ErrorCode {
  CapExceeded,
  NotNormal,
  PrimeOverlap,
  DepthMismatch,
  RelationCheckFailed,
  WrongFamily,
  WrongShape,
  OutOfRange,
  SchemaViolation,
  InvalidGroup,
};

std::string_view to_string(ErrorCode code);

// Every library failure is raised as an Error; the code is stable and is what
// the CLI and tests match on.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

}  // namespace atlas
