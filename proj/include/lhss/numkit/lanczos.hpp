#pragma once

#include <functional>

#include "lhss/numkit/matrix.hpp"

namespace lhss {

using SymmetricOperator = std::function<RealVector(const RealVector&)>;

struct LanczosExtremes {
  double smallest = 0.0;
  double largest = 0.0;
  Index steps = 0;
};

/// Which end of the spectrum the caller needs to converge. The other end is
/// still returned, but only as the current Ritz value.
enum class LanczosEnds { Both, Smallest, Largest };

/// Extreme eigenvalues of a symmetric operator by Lanczos with full
/// reorthogonalization. A requested end counts as converged when its Ritz
/// residual |β·s_last| ≤ tol·|θ|; an invariant Krylov space stops at once.
/// Throws EstimationFailed when max_steps pass without convergence.
LanczosExtremes lanczos_extremes(const SymmetricOperator& op, Index n, double tol = 1e-6, Index max_steps = 500,
                                 LanczosEnds ends = LanczosEnds::Both);

}  // namespace lhss
