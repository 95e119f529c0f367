#pragma once

#include <stdexcept>
#include <string>

namespace trisign {

// Failure taxonomy shared by the library and the CLI exit-code mapping.
enum class ErrorKind {
  InvalidInput,
  InvalidSecant,
  DegenerateConfig,
  SupplyPointRequired,
  Unsupported,
  SingularAlongLine,
  Degenerate,
  DegenerateOnWall,
  NotBalanced,
  NonGenericCurve,
  NonGenericPath,
  IncompleteEnumeration,
  NumericFailure,
};

inline const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::InvalidSecant: return "InvalidSecant";
    case ErrorKind::DegenerateConfig: return "DegenerateConfig";
    case ErrorKind::SupplyPointRequired: return "SupplyPointRequired";
    case ErrorKind::Unsupported: return "Unsupported";
    case ErrorKind::SingularAlongLine: return "SingularAlongLine";
    case ErrorKind::Degenerate: return "Degenerate";
    case ErrorKind::DegenerateOnWall: return "DegenerateOnWall";
    case ErrorKind::NotBalanced: return "NotBalanced";
    case ErrorKind::NonGenericCurve: return "NonGenericCurve";
    case ErrorKind::NonGenericPath: return "NonGenericPath";
    case ErrorKind::IncompleteEnumeration: return "IncompleteEnumeration";
    case ErrorKind::NumericFailure: return "NumericFailure";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + msg), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

  // CLI contract: 1 = bad input/request, 2 = degenerate/wall, 3 = incomplete
  // enumeration, 4 = numeric failure.
  int exit_code() const {
    switch (kind_) {
      case ErrorKind::InvalidInput:
      case ErrorKind::InvalidSecant:
      case ErrorKind::DegenerateConfig:
      case ErrorKind::SupplyPointRequired:
      case ErrorKind::Unsupported:
        return 1;
      case ErrorKind::SingularAlongLine:
      case ErrorKind::Degenerate:
      case ErrorKind::DegenerateOnWall:
      case ErrorKind::NotBalanced:
      case ErrorKind::NonGenericCurve:
      case ErrorKind::NonGenericPath:
        return 2;
      case ErrorKind::IncompleteEnumeration:
        return 3;
      case ErrorKind::NumericFailure:
        return 4;
    }
    return 4;
  }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) { throw Error(kind, msg); }

}  // namespace trisign
