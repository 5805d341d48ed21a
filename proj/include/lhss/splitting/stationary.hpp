#pragma once

#include <functional>
#include <string>

#include "lhss/splitting/methods.hpp"
#include "lhss/splitting/system.hpp"

namespace lhss {

/// One configured stationary splitting iteration x ↦ G·x + c. All
/// factorizations are computed by build() and reused by every step().
class StationaryIteration {
 public:
  /// Throws NotPositiveDefinite or SingularMatrix from the factorizations it
  /// needs, InvalidArgument on a bad configuration.
  static StationaryIteration build(const ComplexSymmetricSystem& sys, const IterationConfig& cfg);

  ComplexVector step(const ComplexVector& x) const { return step_(x); }
  const std::string& tag() const noexcept { return tag_; }

 private:
  std::function<ComplexVector(const ComplexVector&)> step_;
  std::string tag_;
};

/// Runs any configured method until RES ≤ tol, max_iter, or RES exceeds the
/// divergence threshold.
SolveReport solve_stationary(const ComplexSymmetricSystem& sys, const IterationConfig& cfg);

/// Method-family entry points; each rejects methods outside its family with
/// InvalidArgument.
SolveReport lhss_solve(const ComplexSymmetricSystem& sys, const IterationConfig& cfg);
SolveReport plhss_solve(const ComplexSymmetricSystem& sys, const IterationConfig& cfg);
SolveReport baseline_solve(const ComplexSymmetricSystem& sys, const IterationConfig& cfg);

/// Dense iteration matrix G of the configured method, assembled from its
/// closed form with dense LU solves (independent of the step() code path).
/// Throws DimensionTooLarge when n exceeds cap.
ComplexMatrix iteration_matrix(const ComplexSymmetricSystem& sys, const IterationConfig& cfg,
                               std::size_t cap = kDefaultDenseCap);

}  // namespace lhss
