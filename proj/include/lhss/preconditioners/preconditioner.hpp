#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string_view>

#include "lhss/splitting/system.hpp"

namespace lhss {

enum class PreconditionerKind { Identity, PLW, PLT, HSS, PMHSS, LPMHSS, CtoR };

std::string_view to_string(PreconditionerKind k) noexcept;
/// Case-insensitive; "none" maps to Identity. Throws InvalidArgument.
PreconditionerKind preconditioner_from_string(std::string_view name);

/// A factorized preconditioner P with z = P⁻¹r. Immutable after build();
/// apply() is reentrant.
///
///   PLW     P = i·((α+1)/α)·T
///   PLT     P = i·(T + W/α)
///   HSS     P = (1/(2α))·(αI+W)·(αI+iT)
///   PMHSS   P = ((1+i)/(2α))·(αV+W)·V⁻¹·(αV+T), V = W unless a weight is given
///   LPMHSS  P = (αW+T)/α
///   CtoR    P = [[W, T], [−T, W+2T]] acting on the real 2n form
class Preconditioner {
 public:
  Preconditioner();  // Identity of dimension 0; rebuild before use

  /// Throws SingularMatrix / NotPositiveDefinite for a factor that fails,
  /// InvalidArgument for α ≤ 0.
  static Preconditioner build(PreconditionerKind kind, const ComplexSymmetricSystem& sys, double alpha,
                              const std::optional<RealSymMatrix>& pmhss_weight = std::nullopt);

  PreconditionerKind kind() const noexcept;
  double alpha() const noexcept;
  /// Dimension of the complex system.
  Index n() const noexcept;
  /// n for complex kinds, 2n for CtoR.
  Index operator_dimension() const noexcept;
  bool operates_on_real_form() const noexcept { return kind() == PreconditionerKind::CtoR; }
  /// Pᵀ = P over the complex field (needed by COCG).
  bool is_complex_symmetric() const noexcept;

  /// z = P⁻¹r for the complex kinds (throws InvalidArgument for CtoR).
  ComplexVector apply(const ComplexVector& r) const;
  /// z = P⁻¹r on the 2n real form (CtoR only).
  RealVector apply_real(const RealVector& r) const;

  /// Explicit P (complex kinds, dense oracle use only).
  ComplexMatrix dense_matrix() const;
  /// Explicit 2n×2n P (CtoR only).
  RealMatrix dense_real_matrix() const;

 private:
  struct State;
  std::shared_ptr<const State> state_;
};

/// The real equivalent of (W + iT)x = b used with CtoR:
/// [[W, T], [−T, W]]·[Re x; −Im x] = [Re b; −Im b].
RealVector real_form_apply(const ComplexSymmetricSystem& sys, const RealVector& v);
RealVector real_form_rhs(const ComplexVector& b);
RealVector to_real_form(const ComplexVector& x);
ComplexVector from_real_form(const RealVector& v);
RealMatrix real_form_dense(const ComplexSymmetricSystem& sys);

}  // namespace lhss
