#include "lhss/preconditioners/eigen_structure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/LU>

#include "lhss/numkit/dense_eigen.hpp"
#include "lhss/numkit/error.hpp"
#include "lhss/spectral/summary.hpp"

namespace lhss {

namespace {

constexpr Complex kI(0.0, 1.0);

struct SymmetricRoots {
  RealMatrix sqrt;
  RealMatrix inv_sqrt;
  double condition = 0.0;
};

// Principal square root and inverse square root of an SPD matrix from its
// eigendecomposition.
SymmetricRoots spd_roots(const RealMatrix& m, std::size_t cap) {
  const auto e = dense_sym_eigen(m, cap);
  if (e.values(0) <= 0.0) throw Error(ErrorCode::NotPositiveDefinite, "matrix is not positive definite");
  const RealVector s = e.values.cwiseSqrt();
  SymmetricRoots r;
  r.sqrt = e.vectors * s.asDiagonal() * e.vectors.transpose();
  r.inv_sqrt = e.vectors * s.cwiseInverse().asDiagonal() * e.vectors.transpose();
  r.condition = e.values(e.values.size() - 1) / e.values(0);
  return r;
}

double condition_of(const RealMatrix& x) {
  Eigen::BDCSVD<RealMatrix> svd(x);
  const auto& s = svd.singularValues();
  return s(0) / s(s.size() - 1);
}

}  // namespace

ComplexVector canonical_order(ComplexVector v) {
  std::sort(v.begin(), v.end(), [](const Complex& a, const Complex& b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return v;
}

double matched_distance(const ComplexVector& a, const ComplexVector& b) {
  require_same_dimension(a.size(), b.size(), "matched multisets");
  const ComplexVector x = canonical_order(a);
  const ComplexVector y = canonical_order(b);
  std::vector<bool> used(static_cast<std::size_t>(y.size()), false);
  double worst = 0.0;
  for (Index i = 0; i < x.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    Index pick = -1;
    for (Index j = 0; j < y.size(); ++j) {
      if (used[static_cast<std::size_t>(j)]) continue;
      const double d = std::abs(x(i) - y(j));
      if (d < best) {
        best = d;
        pick = j;
      }
    }
    used[static_cast<std::size_t>(pick)] = true;
    worst = std::max(worst, best);
  }
  return worst;
}

double remark41_map(double xi, double alpha) {
  if (std::abs(alpha + xi) <= 1e-12) throw Error(ErrorCode::PoleError, "alpha + xi vanishes");
  return (1.0 - alpha * xi) / (alpha + xi);
}

double remark41_inverse_map(double tau, double alpha) {
  if (std::abs(alpha + tau) <= 1e-12) throw Error(ErrorCode::PoleError, "alpha + tau vanishes");
  return (1.0 - alpha * tau) / (alpha + tau);
}

AlphaInterval remark43_alpha_range(const ComplexSymmetricSystem& sys) {
  const auto s = summarize(sys);
  if (!(s.mu_1 < 0.0)) throw Error(ErrorCode::NotIndefinite, "T has no negative eigenvalue");
  return {0.0, -s.lambda_min / s.mu_1};
}

EigenStructureReport eigen_structure(PreconditionerKind kind, const ComplexSymmetricSystem& sys, double alpha,
                                     std::size_t cap) {
  if (kind != PreconditionerKind::PLW && kind != PreconditionerKind::PLT) {
    throw Error(ErrorCode::InvalidArgument, "eigen_structure supports PLW and PLT only");
  }
  if (!(alpha > 0.0)) throw Error(ErrorCode::InvalidArgument, "alpha must be positive");
  require_dense_cap(sys.n(), cap);
  const Index n = sys.n();
  const RealMatrix w = sys.real_part().to_dense();
  const RealMatrix t = sys.imag_part().to_dense();

  EigenStructureReport rep;
  rep.mode = kind;
  rep.alpha = alpha;

  Complex prefactor;
  Complex slope;
  RealMatrix z;
  SymmetricRoots roots;
  if (kind == PreconditionerKind::PLW) {
    roots = spd_roots(w, cap);
    z = roots.sqrt * t.partialPivLu().solve(roots.sqrt);
    prefactor = alpha / (alpha + 1.0);
    slope = -kI;
  } else {
    const RealMatrix s = alpha * t + w;
    try {
      roots = spd_roots(s, cap);
    } catch (const Error&) {
      throw Error(ErrorCode::NotPositiveDefinite, "alpha*T + W is not positive definite");
    }
    z = roots.inv_sqrt * (t - alpha * w) * roots.inv_sqrt;
    prefactor = alpha / Complex(alpha, 1.0);
    slope = kI;
  }
  z = 0.5 * (z + z.transpose());
  const auto ez = dense_sym_eigen(z, cap);
  rep.parameters = ez.values;
  rep.predicted_kappa2 = std::sqrt(roots.condition);
  rep.eigenvectors = roots.inv_sqrt * ez.vectors;
  rep.kappa2_X = condition_of(rep.eigenvectors);
  rep.eigenvector_eta.resize(n);
  for (Index j = 0; j < n; ++j) rep.eigenvector_eta(j) = prefactor * (1.0 + slope * ez.values(j));
  rep.predicted_eta = canonical_order(rep.eigenvector_eta);

  const Preconditioner p = Preconditioner::build(kind, sys, alpha);
  const ComplexMatrix pa = p.dense_matrix().partialPivLu().solve(sys.dense_matrix());
  rep.eta = canonical_order(dense_complex_eigenvalues(pa, cap));
  rep.max_eta_mismatch = matched_distance(rep.eta, rep.predicted_eta);
  return rep;
}

}  // namespace lhss
