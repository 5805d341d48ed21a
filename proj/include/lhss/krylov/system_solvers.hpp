#pragma once

#include <optional>
#include <string_view>

#include "lhss/krylov/operator.hpp"
#include "lhss/preconditioners/preconditioner.hpp"

namespace lhss {

enum class KrylovSolver { GMRES, COCG };
std::string_view to_string(KrylovSolver s) noexcept;
KrylovSolver krylov_solver_from_string(std::string_view name);

struct KrylovConfig {
  KrylovSolver solver = KrylovSolver::GMRES;
  double tol = 1e-8;
  int max_iter = 500;
  std::optional<int> restart;
  Preconditioner preconditioner;  // Identity unless built
  std::optional<ComplexVector> initial_guess;

  void validate() const;
};

/// Runs on the complex system, or on the 2n real form when the
/// preconditioner is CtoR. Residuals are always those of the complex system.
SolveReport gmres(const ComplexSymmetricSystem& sys, const KrylovConfig& cfg);
/// Throws PreconditionerNotSymmetric for HSS, CtoR and weighted PMHSS.
SolveReport cocg(const ComplexSymmetricSystem& sys, const KrylovConfig& cfg);
/// Dispatches on cfg.solver.
SolveReport krylov_solve(const ComplexSymmetricSystem& sys, const KrylovConfig& cfg);

}  // namespace lhss
