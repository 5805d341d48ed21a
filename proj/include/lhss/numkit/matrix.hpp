#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace lhss {

using Index = Eigen::Index;
using Complex = std::complex<double>;
using RealVector = Eigen::VectorXd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;
using SparseMatrix = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;

/// Upper dimension for every dense (oracle) computation unless a caller
/// passes its own cap.
inline constexpr std::size_t kDefaultDenseCap = 2000;

enum class Layout { Dense, Sparse };

/// Real symmetric matrix, stored either dense or as a compressed sparse matrix
/// holding both triangles. Symmetry is exact: every constructor either builds
/// the matrix from one triangle or rejects inputs with entry(i,j) != entry(j,i).
/// Values are immutable after construction.
class RealSymMatrix {
 public:
  RealSymMatrix() = default;

  static RealSymMatrix from_dense(const RealMatrix& m);
  /// Symmetrizes (m + mᵀ)/2 first. Use for matrices that are symmetric in
  /// exact arithmetic but were produced by floating-point products.
  static RealSymMatrix from_dense_symmetrized(const RealMatrix& m);
  static RealSymMatrix from_sparse(const SparseMatrix& m);
  /// Entries must satisfy row >= col; duplicates are summed.
  static RealSymMatrix from_lower_triplets(Index n, std::span<const Triplet> lower,
                                           Layout layout = Layout::Sparse);
  static RealSymMatrix identity(Index n, Layout layout = Layout::Dense);
  static RealSymMatrix diagonal(const RealVector& d, Layout layout = Layout::Dense);

  Index n() const noexcept { return n_; }
  Layout layout() const noexcept;
  bool is_sparse() const noexcept { return layout() == Layout::Sparse; }

  double entry(Index i, Index j) const;
  RealMatrix to_dense() const;
  SparseMatrix to_sparse() const;
  RealSymMatrix with_layout(Layout layout) const;

  /// Non-zero entries of the lower triangle (row >= col), column-major order.
  std::vector<Triplet> lower_triplets() const;

  RealVector apply(const RealVector& x) const;
  /// Two real products: W·Re(x) + i·W·Im(x).
  ComplexVector apply(const ComplexVector& x) const;

  double max_abs() const;
  double frobenius_norm() const;
  RealVector diagonal_entries() const;

  /// a·A + b·B; sparse only if both operands are sparse.
  static RealSymMatrix combine(double a, const RealSymMatrix& A, double b, const RealSymMatrix& B);
  /// alpha·I + this.
  RealSymMatrix shifted(double alpha) const;
  RealSymMatrix scaled(double a) const;

  friend bool operator==(const RealSymMatrix& a, const RealSymMatrix& b);

 private:
  Index n_ = 0;
  std::variant<RealMatrix, SparseMatrix> storage_;
};

void require_finite(const ComplexVector& v, const char* what);
void require_same_dimension(Index a, Index b, const char* what);

}  // namespace lhss
