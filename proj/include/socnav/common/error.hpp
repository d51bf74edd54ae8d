#pragma once

#include <stdexcept>
#include <string>

namespace socnav {

// Machine-readable failure categories surfaced by the engine. Data-level
// problems (a scenario that fails validation) are reported as values, not
// exceptions; these codes cover contract violations and I/O.
enum class ErrorCode {
  ShapeMismatch,
  IndexOutOfRange,
  NotScalar,
  NonFinite,
  UnknownRelation,
  EntityMismatch,
  TooShort,
  VersionMismatch,
  Io,
  Schema,
  Usage,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::ShapeMismatch: return "SHAPE_MISMATCH";
    case ErrorCode::IndexOutOfRange: return "INDEX_OUT_OF_RANGE";
    case ErrorCode::NotScalar: return "NOT_SCALAR";
    case ErrorCode::NonFinite: return "NON_FINITE";
    case ErrorCode::UnknownRelation: return "UNKNOWN_RELATION";
    case ErrorCode::EntityMismatch: return "ENTITY_MISMATCH";
    case ErrorCode::TooShort: return "TOO_SHORT";
    case ErrorCode::VersionMismatch: return "VERSION_MISMATCH";
    case ErrorCode::Io: return "IO";
    case ErrorCode::Schema: return "SCHEMA";
    case ErrorCode::Usage: return "USAGE";
  }
  return "UNKNOWN";
}

}  // namespace socnav
