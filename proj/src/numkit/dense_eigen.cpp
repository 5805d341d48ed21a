#include "lhss/numkit/dense_eigen.hpp"

#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "lhss/numkit/error.hpp"

namespace lhss {

void require_dense_cap(Index n, std::size_t cap) {
  if (static_cast<std::size_t>(n) > cap) {
    throw Error(ErrorCode::DimensionTooLarge,
                "dimension " + std::to_string(n) + " exceeds the dense cap " + std::to_string(cap));
  }
}

SymEigenResult dense_sym_eigen(const RealMatrix& m, std::size_t cap) {
  require_dense_cap(m.rows(), cap);
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(m, Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::NoConvergence, "symmetric eigensolver did not converge");
  return {es.eigenvalues(), es.eigenvectors()};
}

SymEigenResult dense_sym_eigen(const RealSymMatrix& m, std::size_t cap) {
  require_dense_cap(m.n(), cap);
  return dense_sym_eigen(m.to_dense(), cap);
}

RealVector dense_sym_eigenvalues(const RealMatrix& m, std::size_t cap) {
  require_dense_cap(m.rows(), cap);
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::NoConvergence, "symmetric eigensolver did not converge");
  return es.eigenvalues();
}

ComplexVector dense_complex_eigenvalues(const ComplexMatrix& m, std::size_t cap) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::InvalidArgument, "eigenvalues need a square matrix");
  require_dense_cap(m.rows(), cap);
  Eigen::ComplexEigenSolver<ComplexMatrix> es(m, false);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::NoConvergence, "complex Schur iteration stalled");
  return es.eigenvalues();
}

double spectral_radius(const ComplexMatrix& m, std::size_t cap) {
  return dense_complex_eigenvalues(m, cap).cwiseAbs().maxCoeff();
}

double spectral_condition_number(const ComplexMatrix& m, std::size_t cap) {
  require_dense_cap(m.rows(), cap);
  Eigen::BDCSVD<ComplexMatrix> svd(m);
  const auto& s = svd.singularValues();
  return s(0) / s(s.size() - 1);
}

}  // namespace lhss
