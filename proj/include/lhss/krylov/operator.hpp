#pragma once

#include <functional>
#include <optional>

#include "lhss/splitting/methods.hpp"

namespace lhss {

/// A linear system given by its action, the seam under the system-level
/// solvers. An empty `precondition` means no preconditioner. When
/// `relative_residual` is set it replaces ‖b − A·x‖/‖b‖ for the recorded
/// history (used to report residuals of the original complex system).
template <typename Scalar>
struct OperatorProblem {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  std::function<Vector(const Vector&)> apply;
  std::function<Vector(const Vector&)> precondition;
  Vector rhs;
  std::function<double(const Vector&)> relative_residual;
  std::optional<Vector> initial_guess;  // zero when absent
};

using ComplexOperatorProblem = OperatorProblem<Complex>;
using RealOperatorProblem = OperatorProblem<double>;

struct KrylovOptions {
  double tol = 1e-8;
  int max_iter = 500;
  std::optional<int> restart;  // GMRES only; none means full GMRES
  /// Called after every iteration with (iteration, true relative residual).
  std::function<void(int, double)> observer;
};

/// Solution in the scalar type of the problem, plus the usual report
/// (whose `solution` field stays empty).
template <typename Scalar>
struct OperatorSolve {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> solution;
  SolveReport report;
};

/// Left-preconditioned GMRES(m) with modified Gram-Schmidt
/// (plus one reorthogonalization pass when needed) and Givens rotations.
/// Throws ZeroRhs, InvalidArgument.
OperatorSolve<Complex> gmres_operator(const ComplexOperatorProblem& problem, const KrylovOptions& opts);
OperatorSolve<double> gmres_operator(const RealOperatorProblem& problem, const KrylovOptions& opts);

/// Preconditioned COCG with the unconjugated form uᵀv.
/// A bilinear breakdown ends the run with status Breakdown.
OperatorSolve<Complex> cocg_operator(const ComplexOperatorProblem& problem, const KrylovOptions& opts);

}  // namespace lhss
