#include "lhss/numkit/lanczos.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "lhss/numkit/error.hpp"

namespace lhss {

namespace {

constexpr Index kCheckStride = 10;

}  // namespace

LanczosExtremes lanczos_extremes(const SymmetricOperator& op, Index n, double tol, Index max_steps,
                                 LanczosEnds ends) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "operator dimension must be >= 1");
  const Index limit = std::min(n, max_steps);
  RealMatrix q(n, limit + 1);
  RealVector alpha(limit), beta(limit);

  RealVector start(n);
  for (Index i = 0; i < n; ++i) start(i) = 1.0 + 0.25 * std::cos(0.9 * static_cast<double>(i) + 0.1);
  q.col(0) = start.normalized();

  for (Index j = 0; j < limit; ++j) {
    RealVector w = op(q.col(j));
    alpha(j) = q.col(j).dot(w);
    // Two classical Gram-Schmidt passes against the whole basis.
    for (int pass = 0; pass < 2; ++pass) {
      w -= q.leftCols(j + 1) * (q.leftCols(j + 1).transpose() * w);
    }
    beta(j) = w.norm();

    const Index m = j + 1;
    const bool last = m == limit || m == n || beta(j) == 0.0;
    // The tridiagonal eigensolve is O(m^3); testing every step would dominate long runs.
    if (m > 2 * kCheckStride && m % kCheckStride != 0 && !last) {
      q.col(j + 1) = w / beta(j);
      continue;
    }
    Eigen::SelfAdjointEigenSolver<RealMatrix> es;
    RealVector sub = beta.head(m - 1);
    es.computeFromTridiagonal(alpha.head(m), sub, Eigen::ComputeEigenvectors);
    const RealVector& theta = es.eigenvalues();
    const double lo = theta(0), hi = theta(m - 1);
    const double scale = std::max(std::abs(lo), std::abs(hi));
    const bool invariant = beta(j) <= 1e-12 * std::max(scale, 1e-300) || m == n;

    const auto settled = [&](double value, Index col) {
      return std::abs(beta(j) * es.eigenvectors()(m - 1, col)) <= tol * std::abs(value);
    };
    const bool lo_ok = ends == LanczosEnds::Largest || settled(lo, 0);
    const bool hi_ok = ends == LanczosEnds::Smallest || settled(hi, m - 1);
    if (invariant || (lo_ok && hi_ok && m >= 2)) return {lo, hi, m};

    q.col(j + 1) = w / beta(j);
  }
  throw Error(ErrorCode::EstimationFailed,
              "Lanczos did not reach relative tolerance " + std::to_string(tol) + " in " +
                  std::to_string(limit) + " steps");
}

}  // namespace lhss
