#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "lhss/numkit/error.hpp"

namespace lhss {

/// Dense symmetric LDLᵀ with Bunch-Kaufman partial pivoting (1×1 and 2×2
/// blocks). Works over double and over std::complex<double>; in the complex
/// case the factorization is of a complex *symmetric* matrix (Aᵀ = A, no
/// conjugation), which is what αI + iT and W + iT are.
///
/// The factorization satisfies M(perm[i], perm[j]) = (L·D·Lᵀ)(i, j).
template <typename Scalar>
class BunchKaufman {
 public:
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Index = Eigen::Index;

  BunchKaufman() = default;

  /// Throws Error(SingularMatrix) when a pivot block is numerically singular:
  /// |d| <= tol·scale for 1×1 blocks, |det| <= tol·scale² for 2×2 blocks, with
  /// scale = max |M_ij|.
  explicit BunchKaufman(const Matrix& m, double singular_tol = 1e-14) { factorize(m, singular_tol); }

  Index n() const noexcept { return L_.rows(); }

  Vector solve(const Vector& b) const {
    const Index n = this->n();
    Vector y(n);
    for (Index i = 0; i < n; ++i) y(i) = b(perm_[static_cast<std::size_t>(i)]);
    y = L_.template triangularView<Eigen::UnitLower>().solve(y);
    for (Index k = 0; k < n;) {
      if (block_[static_cast<std::size_t>(k)] == 1) {
        y(k) /= diag_(k);
        k += 1;
      } else {
        const Scalar a = diag_(k), c = diag_(k + 1), off = offdiag_(k);
        const Scalar det = a * c - off * off;
        const Scalar y0 = y(k), y1 = y(k + 1);
        y(k) = (c * y0 - off * y1) / det;
        y(k + 1) = (a * y1 - off * y0) / det;
        k += 2;
      }
    }
    y = L_.transpose().template triangularView<Eigen::UnitUpper>().solve(y);
    Vector x(n);
    for (Index i = 0; i < n; ++i) x(perm_[static_cast<std::size_t>(i)]) = y(i);
    return x;
  }

  Matrix solve(const Matrix& b) const {
    Matrix x(b.rows(), b.cols());
    for (Index j = 0; j < b.cols(); ++j) x.col(j) = solve(Vector(b.col(j)));
    return x;
  }

  Matrix block_diagonal() const {
    const Index n = this->n();
    Matrix d = Matrix::Zero(n, n);
    for (Index k = 0; k < n; ++k) d(k, k) = diag_(k);
    for (Index k = 0; k + 1 < n; ++k) {
      if (block_[static_cast<std::size_t>(k)] == 2) {
        d(k + 1, k) = offdiag_(k);
        d(k, k + 1) = offdiag_(k);
      }
    }
    return d;
  }

  Matrix reconstruct() const {
    const Index n = this->n();
    Matrix ldl = L_ * block_diagonal() * L_.transpose();
    Matrix m(n, n);
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < n; ++j) m(perm_[static_cast<std::size_t>(i)], perm_[static_cast<std::size_t>(j)]) = ldl(i, j);
    }
    return m;
  }

  const Matrix& unit_lower() const noexcept { return L_; }
  const std::vector<Index>& permutation() const noexcept { return perm_; }
  /// 1 at the start of a 1×1 block, 2 at the start of a 2×2 block, 0 on the
  /// second row of a 2×2 block.
  const std::vector<int>& blocks() const noexcept { return block_; }
  const Vector& diagonal() const noexcept { return diag_; }
  const Vector& off_diagonal() const noexcept { return offdiag_; }

  Index two_by_two_count() const {
    Index c = 0;
    for (int b : block_) c += (b == 2);
    return c;
  }

 private:
  void factorize(const Matrix& m, double tol) {
    using std::abs;
    const Index n = m.rows();
    if (n != m.cols() || n < 1) throw Error(ErrorCode::InvalidArgument, "Bunch-Kaufman needs a square, non-empty matrix");
    const double alpha0 = (1.0 + std::sqrt(17.0)) / 8.0;
    Matrix a = m;
    L_ = Matrix::Identity(n, n);
    diag_ = Vector::Zero(n);
    offdiag_ = Vector::Zero(n);
    block_.assign(static_cast<std::size_t>(n), 0);
    perm_.resize(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) perm_[static_cast<std::size_t>(i)] = i;

    double scale = 0.0;
    for (Index j = 0; j < n; ++j)
      for (Index i = 0; i < n; ++i) scale = std::max(scale, static_cast<double>(abs(a(i, j))));
    if (scale == 0.0) throw Error(ErrorCode::SingularMatrix, "matrix is zero");

    Index k = 0;
    while (k < n) {
      const double absakk = abs(a(k, k));
      double colmax = 0.0;
      Index imax = k;
      for (Index i = k + 1; i < n; ++i) {
        if (abs(a(i, k)) > colmax) {
          colmax = abs(a(i, k));
          imax = i;
        }
      }
      if (std::max(absakk, colmax) <= tol * scale) {
        throw Error(ErrorCode::SingularMatrix, "zero pivot column at step " + std::to_string(k));
      }

      int kstep = 1;
      Index kp = k;
      if (absakk < alpha0 * colmax) {
        double rowmax = 0.0;
        for (Index j = k; j < n; ++j) {
          if (j != imax) rowmax = std::max(rowmax, static_cast<double>(abs(a(imax, j))));
        }
        if (absakk >= alpha0 * colmax * (colmax / rowmax)) {
          kp = k;
        } else if (abs(a(imax, imax)) >= alpha0 * rowmax) {
          kp = imax;
        } else {
          kp = imax;
          kstep = 2;
        }
      }

      const Index kk = k + kstep - 1;
      if (kp != kk) symmetric_swap(a, kk, kp, k);

      const Index m_rest = n - k - kstep;
      if (kstep == 1) {
        const Scalar d = a(k, k);
        if (abs(d) <= tol * scale) {
          throw Error(ErrorCode::SingularMatrix, "1x1 pivot " + std::to_string(abs(d)) + " at step " + std::to_string(k));
        }
        diag_(k) = d;
        block_[static_cast<std::size_t>(k)] = 1;
        if (m_rest > 0) {
          Vector col = a.col(k).tail(m_rest);
          Vector l = col / d;
          L_.col(k).tail(m_rest) = l;
          a.bottomRightCorner(m_rest, m_rest).noalias() -= l * col.transpose();
        }
      } else {
        const Scalar d11 = a(k, k), d21 = a(k + 1, k), d22 = a(k + 1, k + 1);
        const Scalar det = d11 * d22 - d21 * d21;
        if (abs(det) <= tol * scale * scale) {
          throw Error(ErrorCode::SingularMatrix, "2x2 pivot block is singular at step " + std::to_string(k));
        }
        diag_(k) = d11;
        diag_(k + 1) = d22;
        offdiag_(k) = d21;
        block_[static_cast<std::size_t>(k)] = 2;
        block_[static_cast<std::size_t>(k + 1)] = 0;
        if (m_rest > 0) {
          Matrix c = a.block(k + 2, k, m_rest, 2);
          Eigen::Matrix<Scalar, 2, 2> dinv;
          dinv << d22, -d21, -d21, d11;
          dinv /= det;
          Matrix l = c * dinv;
          L_.block(k + 2, k, m_rest, 2) = l;
          a.bottomRightCorner(m_rest, m_rest).noalias() -= l * c.transpose();
        }
      }
      k += kstep;
    }
  }

  // Swap indices p and q (both >= k) of the trailing matrix, carrying the
  // already-computed rows of L along.
  void symmetric_swap(Matrix& a, Index p, Index q, Index k) {
    a.row(p).swap(a.row(q));
    a.col(p).swap(a.col(q));
    if (k > 0) L_.block(p, 0, 1, k).swap(L_.block(q, 0, 1, k));
    std::swap(perm_[static_cast<std::size_t>(p)], perm_[static_cast<std::size_t>(q)]);
  }

  Matrix L_;
  Vector diag_;
  Vector offdiag_;
  std::vector<int> block_;
  std::vector<Index> perm_;
};

}  // namespace lhss
