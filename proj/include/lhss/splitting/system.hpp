#pragma once

#include <memory>

#include "lhss/numkit/factorization.hpp"
#include "lhss/numkit/matrix.hpp"

namespace lhss {

/// A = W + iT with right-hand side b. Copies are cheap and share the matrices
/// together with a lazily built factorization cache (Cholesky of W, LDLᵀ of
/// T). The cache is guarded internally, so a system may be shared by
/// concurrent solves.
class ComplexSymmetricSystem {
 public:
  ComplexSymmetricSystem() = default;
  /// Throws DimensionMismatch or InvalidArgument (non-finite b).
  ComplexSymmetricSystem(RealSymMatrix real_part, RealSymMatrix imag_part, ComplexVector rhs);

  Index n() const noexcept;
  const RealSymMatrix& real_part() const noexcept;
  const RealSymMatrix& imag_part() const noexcept;
  const ComplexVector& rhs() const noexcept;

  /// Same matrices (and factor cache), different right-hand side.
  ComplexSymmetricSystem with_rhs(ComplexVector rhs) const;

  ComplexVector apply(const ComplexVector& x) const;
  double relative_residual(const ComplexVector& x) const;
  ComplexMatrix dense_matrix() const;

  /// Cholesky of W. Throws NotPositiveDefinite.
  const SpdFactorization& real_factor() const;
  /// LDLᵀ of T. Throws SingularMatrix.
  const SymIndefFactorization& imag_factor() const;
  /// Forces both factorizations, surfacing a violated hypothesis as an error.
  void validate() const;

 private:
  struct Shared;
  std::shared_ptr<Shared> shared_;
  ComplexVector rhs_;
};

}  // namespace lhss
