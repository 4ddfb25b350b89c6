#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hhelm {

enum class ErrorCode {
  InvalidArgument,
  InvalidMatrix,
  ShapeMismatch,
  InvalidConfig,
  NumericalFailure,
  SingularMatrix,
  InsufficientExtrema,
  DegenerateLabels,
  InvalidLabel,
  InsufficientClassMembers,
  ParseError,
  FormatError,
  IoError,
  NotFound,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidMatrix: return "InvalidMatrix";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::NumericalFailure: return "NumericalFailure";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::InsufficientExtrema: return "InsufficientExtrema";
    case ErrorCode::DegenerateLabels: return "DegenerateLabels";
    case ErrorCode::InvalidLabel: return "InvalidLabel";
    case ErrorCode::InsufficientClassMembers: return "InsufficientClassMembers";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::FormatError: return "FormatError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::NotFound: return "NotFound";
  }
  return "Unknown";
}

// Every failure in the core library is reported through this type; the C API
// translates the code into a status value.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace hhelm
