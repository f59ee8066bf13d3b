#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace biphasic {

enum class ErrorCode {
  PoissonRatioSingular,
  InvalidParameter,
  NonPositiveAlpha3,
  ParseError,
  ValidationError,
  UnsupportedElement,
  DimensionMismatch,
  LossOfPositivity,
  SpaceMismatch,
  SingularSystem,
  ToleranceNotReached,
  MaxIterationsExceeded,
  ScheduleExhausted,
  BoundaryViolation,
  ConstraintsNotSatisfied,
  ConfigError,
};

std::string_view to_string(ErrorCode code);

/// Exception carrying a machine-readable code. Everything the library throws
/// derives from this type.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace biphasic
