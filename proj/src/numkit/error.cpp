#include "lhss/numkit/error.hpp"

namespace lhss {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::KindMismatch: return "KindMismatch";
    case ErrorCode::ZeroRhs: return "ZeroRhs";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::EmptyDomain: return "EmptyDomain";
    case ErrorCode::PoleError: return "PoleError";
    case ErrorCode::SpecViolation: return "SpecViolation";
    case ErrorCode::NotIndefinite: return "NotIndefinite";
    case ErrorCode::EstimationFailed: return "EstimationFailed";
    case ErrorCode::PreconditionerNotSymmetric: return "PreconditionerNotSymmetric";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace lhss
