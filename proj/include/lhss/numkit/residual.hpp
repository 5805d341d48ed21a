#pragma once

#include "lhss/numkit/matrix.hpp"

namespace lhss {

/// ‖b − (W + iT)x‖₂ / ‖b‖₂, from two real products with W and two with T.
/// Throws ZeroRhs when ‖b‖₂ = 0 and DimensionMismatch on size disagreement.
double relative_residual(const RealSymMatrix& W, const RealSymMatrix& T, const ComplexVector& x,
                         const ComplexVector& b);

/// (W + iT)x without forming the complex matrix.
ComplexVector apply_complex_symmetric(const RealSymMatrix& W, const RealSymMatrix& T, const ComplexVector& x);

}  // namespace lhss
