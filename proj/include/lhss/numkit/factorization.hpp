#pragma once

#include <memory>
#include <optional>
#include <vector>

#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>

#include "lhss/numkit/bunch_kaufman.hpp"
#include "lhss/numkit/matrix.hpp"

namespace lhss {

struct Inertia {
  Index positive = 0;
  Index negative = 0;
  Index zero = 0;
  friend bool operator==(const Inertia&, const Inertia&) = default;
};

/// Cholesky factorization V = F·Fᵀ with F = Pᵀ·L. Dense inputs use an
/// unpivoted LLᵀ (P = I); sparse inputs use a fill-reducing AMD ordering.
/// Immutable after construction; safe to share across threads.
class SpdFactorization {
 public:
  /// Throws NotPositiveDefinite if a pivot is not positive.
  static SpdFactorization factorize(const RealSymMatrix& m);

  Index n() const noexcept { return n_; }
  bool is_sparse() const noexcept { return sparse_ != nullptr; }

  RealVector solve(const RealVector& rhs) const;
  ComplexVector solve(const ComplexVector& rhs) const;
  RealMatrix solve(const RealMatrix& rhs) const;

  /// F·x, Fᵀ·x, F⁻¹·x, F⁻ᵀ·x for V = F·Fᵀ.
  RealVector half_apply(const RealVector& x) const;
  RealVector half_apply_transpose(const RealVector& x) const;
  RealVector half_solve(const RealVector& x) const;
  RealVector half_solve_transpose(const RealVector& x) const;
  RealMatrix half_solve(const RealMatrix& x) const;
  RealMatrix half_solve_transpose(const RealMatrix& x) const;

  /// Dense lower factor L (in the permuted ordering) and the permutation
  /// perm with (P·x)(i) = x(perm[i]).
  RealMatrix lower() const;
  std::vector<Index> permutation() const;
  RealMatrix reconstruct() const;
  double log_determinant() const;

 private:
  struct SparseImpl;
  Index n_ = 0;
  std::shared_ptr<const Eigen::LLT<RealMatrix>> dense_;
  std::shared_ptr<const SparseImpl> sparse_;
};

/// Symmetric-indefinite LDLᵀ with 1×1/2×2 pivots. Dense inputs use
/// Bunch-Kaufman directly. Sparse inputs try a fill-reducing sparse LDLᵀ and
/// fall back to dense Bunch-Kaufman (n ≤ dense cap) when a pivot is tiny or
/// a probe solve is inaccurate.
class SymIndefFactorization {
 public:
  /// Throws SingularMatrix if a pivot block is numerically singular.
  static SymIndefFactorization factorize(const RealSymMatrix& m, std::size_t dense_cap = kDefaultDenseCap);

  Index n() const noexcept { return n_; }
  Inertia inertia() const noexcept { return inertia_; }
  /// log|det| and sign(det) of the source matrix.
  double log_abs_determinant() const noexcept { return log_abs_det_; }
  int determinant_sign() const noexcept { return det_sign_; }
  double determinant() const;
  Index two_by_two_pivots() const noexcept { return two_by_two_; }
  bool used_dense_pivoting() const noexcept { return dense_ != nullptr; }

  RealVector solve(const RealVector& rhs) const;
  ComplexVector solve(const ComplexVector& rhs) const;
  RealMatrix solve(const RealMatrix& rhs) const;
  RealMatrix reconstruct() const;

 private:
  struct SparseImpl;
  Index n_ = 0;
  Inertia inertia_;
  double log_abs_det_ = 0.0;
  int det_sign_ = 1;
  Index two_by_two_ = 0;
  std::shared_ptr<const BunchKaufman<double>> dense_;
  std::shared_ptr<const SparseImpl> sparse_;
};

/// Factorization of the complex symmetric matrix re + i·im (for example
/// αI + iT). Dense: complex Bunch-Kaufman. Sparse (both parts sparse):
/// Eigen SparseLU.
class ComplexSymFactorization {
 public:
  /// Throws SingularMatrix.
  static ComplexSymFactorization factorize(const RealSymMatrix& re, const RealSymMatrix& im);

  Index n() const noexcept { return n_; }
  ComplexVector solve(const ComplexVector& rhs) const;

 private:
  struct SparseImpl;
  Index n_ = 0;
  std::shared_ptr<const BunchKaufman<Complex>> dense_;
  std::shared_ptr<const SparseImpl> sparse_;
};

}  // namespace lhss
