#include "atlas/error.hpp"

namespace atlas {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::NotNormal: return "NotNormal";
    case ErrorCode::PrimeOverlap: return "PrimeOverlap";
    case ErrorCode::DepthMismatch: return "DepthMismatch";
    case ErrorCode::RelationCheckFailed: return "RelationCheckFailed";
    case ErrorCode::WrongFamily: return "WrongFamily";
    case ErrorCode::WrongShape: return "WrongShape";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::SchemaViolation: return "SchemaViolation";
    case ErrorCode::InvalidGroup: return "InvalidGroup";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace atlas
