#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lhss {

enum class ErrorCode {
  InvalidArgument,
  NotPositiveDefinite,
  SingularMatrix,
  DimensionTooLarge,
  DimensionMismatch,
  NoConvergence,
  ParseError,
  KindMismatch,
  ZeroRhs,
  HypothesisViolated,
  EmptyDomain,
  PoleError,
  SpecViolation,
  NotIndefinite,
  EstimationFailed,
  PreconditionerNotSymmetric,
  IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Library error. Every failure raised by lhss carries one of the codes above
/// so callers (the bench CLI in particular) can report it without parsing text.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace lhss
