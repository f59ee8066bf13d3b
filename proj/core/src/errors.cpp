#include "biphasic/errors.hpp"

namespace biphasic {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::PoissonRatioSingular: return "PoissonRatioSingular";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::NonPositiveAlpha3: return "NonPositiveAlpha3";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::UnsupportedElement: return "UnsupportedElement";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::LossOfPositivity: return "LossOfPositivity";
    case ErrorCode::SpaceMismatch: return "SpaceMismatch";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::ToleranceNotReached: return "ToleranceNotReached";
    case ErrorCode::MaxIterationsExceeded: return "MaxIterationsExceeded";
    case ErrorCode::ScheduleExhausted: return "ScheduleExhausted";
    case ErrorCode::BoundaryViolation: return "BoundaryViolation";
    case ErrorCode::ConstraintsNotSatisfied: return "ConstraintsNotSatisfied";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace biphasic
