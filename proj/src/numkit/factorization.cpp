#include "lhss/numkit/factorization.hpp"

#include <cmath>
#include <string>

#include "lhss/numkit/error.hpp"

namespace lhss {

namespace {

using ComplexSparse = Eigen::SparseMatrix<Complex>;

ComplexVector join(const RealVector& re, const RealVector& im) {
  ComplexVector out(re.size());
  out.real() = re;
  out.imag() = im;
  return out;
}

template <typename Perm>
std::vector<Index> permutation_indices(const Perm& p, Index n) {
  RealVector iota(n);
  for (Index i = 0; i < n; ++i) iota(i) = static_cast<double>(i);
  RealVector moved = p * iota;
  std::vector<Index> out(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = static_cast<Index>(moved(i));
  return out;
}

// Deterministic probe with no special structure.
RealVector probe_vector(Index n) {
  RealVector r(n);
  for (Index i = 0; i < n; ++i) r(i) = 1.0 + 0.5 * std::sin(1.7 * static_cast<double>(i) + 0.3);
  return r;
}

}  // namespace

// ---------------------------------------------------------------- SPD

struct SpdFactorization::SparseImpl {
  Eigen::SimplicialLLT<SparseMatrix, Eigen::Lower, Eigen::AMDOrdering<int>> llt;
};

SpdFactorization SpdFactorization::factorize(const RealSymMatrix& m) {
  SpdFactorization f;
  f.n_ = m.n();
  if (m.is_sparse()) {
    auto impl = std::make_shared<SparseImpl>();
    impl->llt.compute(m.to_sparse());
    if (impl->llt.info() != Eigen::Success) {
      throw Error(ErrorCode::NotPositiveDefinite, "Cholesky met a non-positive pivot");
    }
    f.sparse_ = std::move(impl);
  } else {
    auto llt = std::make_shared<Eigen::LLT<RealMatrix>>(m.to_dense());
    if (llt->info() != Eigen::Success) {
      throw Error(ErrorCode::NotPositiveDefinite, "Cholesky met a non-positive pivot");
    }
    f.dense_ = std::move(llt);
  }
  return f;
}

RealVector SpdFactorization::solve(const RealVector& rhs) const {
  require_same_dimension(rhs.size(), n_, "SPD solve");
  if (sparse_) return sparse_->llt.solve(rhs);
  return dense_->solve(rhs);
}

ComplexVector SpdFactorization::solve(const ComplexVector& rhs) const {
  return join(solve(RealVector(rhs.real())), solve(RealVector(rhs.imag())));
}

RealMatrix SpdFactorization::solve(const RealMatrix& rhs) const {
  require_same_dimension(rhs.rows(), n_, "SPD solve");
  if (sparse_) return sparse_->llt.solve(rhs);
  return dense_->solve(rhs);
}

RealVector SpdFactorization::half_apply(const RealVector& x) const {
  if (sparse_) {
    RealVector y = sparse_->llt.matrixL() * x;
    return sparse_->llt.permutationPinv() * y;
  }
  return dense_->matrixL() * x;
}

RealVector SpdFactorization::half_apply_transpose(const RealVector& x) const {
  if (sparse_) {
    RealVector y = sparse_->llt.permutationP() * x;
    return sparse_->llt.matrixU() * y;
  }
  return dense_->matrixU() * x;
}

RealVector SpdFactorization::half_solve(const RealVector& x) const {
  return half_solve(RealMatrix(x)).col(0);
}

RealVector SpdFactorization::half_solve_transpose(const RealVector& x) const {
  return half_solve_transpose(RealMatrix(x)).col(0);
}

RealMatrix SpdFactorization::half_solve(const RealMatrix& x) const {
  require_same_dimension(x.rows(), n_, "half solve");
  if (sparse_) {
    RealMatrix y = sparse_->llt.permutationP() * x;
    sparse_->llt.matrixL().solveInPlace(y);
    return y;
  }
  return dense_->matrixL().solve(x);
}

RealMatrix SpdFactorization::half_solve_transpose(const RealMatrix& x) const {
  require_same_dimension(x.rows(), n_, "half solve");
  if (sparse_) {
    RealMatrix y = x;
    sparse_->llt.matrixU().solveInPlace(y);
    return sparse_->llt.permutationPinv() * y;
  }
  return dense_->matrixU().solve(x);
}

RealMatrix SpdFactorization::lower() const {
  if (sparse_) return RealMatrix(SparseMatrix(sparse_->llt.matrixL()));
  return RealMatrix(dense_->matrixL());
}

std::vector<Index> SpdFactorization::permutation() const {
  if (sparse_) return permutation_indices(sparse_->llt.permutationP(), n_);
  std::vector<Index> id(static_cast<std::size_t>(n_));
  for (Index i = 0; i < n_; ++i) id[static_cast<std::size_t>(i)] = i;
  return id;
}

RealMatrix SpdFactorization::reconstruct() const {
  RealMatrix l = lower();
  RealMatrix llt = l * l.transpose();
  const auto perm = permutation();
  RealMatrix m(n_, n_);
  for (Index i = 0; i < n_; ++i)
    for (Index j = 0; j < n_; ++j) m(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]) = llt(i, j);
  return m;
}

double SpdFactorization::log_determinant() const {
  RealVector d = sparse_ ? RealVector(SparseMatrix(sparse_->llt.matrixL()).diagonal())
                         : RealVector(dense_->matrixLLT().diagonal());
  return 2.0 * d.array().log().sum();
}

// ---------------------------------------------------------------- indefinite

struct SymIndefFactorization::SparseImpl {
  Eigen::SimplicialLDLT<SparseMatrix, Eigen::Lower, Eigen::AMDOrdering<int>> ldlt;
};

SymIndefFactorization SymIndefFactorization::factorize(const RealSymMatrix& m, std::size_t dense_cap) {
  SymIndefFactorization f;
  f.n_ = m.n();
  const double scale = m.max_abs();
  if (scale == 0.0) throw Error(ErrorCode::SingularMatrix, "matrix is zero");

  if (m.is_sparse()) {
    auto impl = std::make_shared<SparseImpl>();
    const SparseMatrix s = m.to_sparse();
    impl->ldlt.compute(s);
    bool acceptable = impl->ldlt.info() == Eigen::Success;
    if (acceptable) {
      const RealVector d = impl->ldlt.vectorD();
      acceptable = d.cwiseAbs().minCoeff() > 1e-14 * scale && d.allFinite();
    }
    if (acceptable) {
      const RealVector r = probe_vector(f.n_);
      const RealVector y = impl->ldlt.solve(r);
      const double res = (s * y - r).norm();
      acceptable = y.allFinite() && res <= 1e-10 * (s.norm() * y.norm() + r.norm());
    }
    if (acceptable) {
      const RealVector d = impl->ldlt.vectorD();
      for (Index i = 0; i < d.size(); ++i) {
        if (d(i) > 0) {
          ++f.inertia_.positive;
        } else {
          ++f.inertia_.negative;
          f.det_sign_ = -f.det_sign_;
        }
        f.log_abs_det_ += std::log(std::abs(d(i)));
      }
      f.sparse_ = std::move(impl);
      return f;
    }
    if (static_cast<std::size_t>(f.n_) > dense_cap) {
      throw Error(ErrorCode::SingularMatrix,
                  "sparse LDL^T met a tiny pivot and n exceeds the dense pivoting cap");
    }
  }

  auto bk = std::make_shared<BunchKaufman<double>>(m.to_dense());
  const auto& blocks = bk->blocks();
  const RealVector& d = bk->diagonal();
  const RealVector& off = bk->off_diagonal();
  for (Index k = 0; k < f.n_; ++k) {
    const int b = blocks[static_cast<std::size_t>(k)];
    if (b == 1) {
      if (d(k) > 0) {
        ++f.inertia_.positive;
      } else {
        ++f.inertia_.negative;
        f.det_sign_ = -f.det_sign_;
      }
      f.log_abs_det_ += std::log(std::abs(d(k)));
    } else if (b == 2) {
      const double det = d(k) * d(k + 1) - off(k) * off(k);
      if (det < 0) {
        ++f.inertia_.positive;
        ++f.inertia_.negative;
        f.det_sign_ = -f.det_sign_;
      } else if (d(k) + d(k + 1) > 0) {
        f.inertia_.positive += 2;
      } else {
        f.inertia_.negative += 2;
      }
      f.log_abs_det_ += std::log(std::abs(det));
    }
  }
  f.two_by_two_ = bk->two_by_two_count();
  f.dense_ = std::move(bk);
  return f;
}

double SymIndefFactorization::determinant() const {
  return det_sign_ * std::exp(log_abs_det_);
}

RealVector SymIndefFactorization::solve(const RealVector& rhs) const {
  require_same_dimension(rhs.size(), n_, "indefinite solve");
  if (sparse_) return sparse_->ldlt.solve(rhs);
  return dense_->solve(rhs);
}

ComplexVector SymIndefFactorization::solve(const ComplexVector& rhs) const {
  return join(solve(RealVector(rhs.real())), solve(RealVector(rhs.imag())));
}

RealMatrix SymIndefFactorization::solve(const RealMatrix& rhs) const {
  require_same_dimension(rhs.rows(), n_, "indefinite solve");
  if (sparse_) return sparse_->ldlt.solve(rhs);
  return dense_->solve(rhs);
}

RealMatrix SymIndefFactorization::reconstruct() const {
  if (dense_) return dense_->reconstruct();
  const auto& ldlt = sparse_->ldlt;
  RealMatrix l = RealMatrix(SparseMatrix(ldlt.matrixL()));
  RealMatrix ldl = l * ldlt.vectorD().asDiagonal() * l.transpose();
  const auto perm = permutation_indices(ldlt.permutationP(), n_);
  RealMatrix m(n_, n_);
  for (Index i = 0; i < n_; ++i)
    for (Index j = 0; j < n_; ++j) m(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]) = ldl(i, j);
  return m;
}

// ---------------------------------------------------------------- complex symmetric

struct ComplexSymFactorization::SparseImpl {
  Eigen::SparseLU<ComplexSparse, Eigen::COLAMDOrdering<int>> lu;
};

ComplexSymFactorization ComplexSymFactorization::factorize(const RealSymMatrix& re, const RealSymMatrix& im) {
  require_same_dimension(re.n(), im.n(), "complex symmetric factorization");
  ComplexSymFactorization f;
  f.n_ = re.n();
  if (re.is_sparse() && im.is_sparse()) {
    std::vector<Eigen::Triplet<Complex>> trip;
    const SparseMatrix a = re.to_sparse();
    const SparseMatrix b = im.to_sparse();
    for (Index k = 0; k < a.outerSize(); ++k)
      for (SparseMatrix::InnerIterator it(a, k); it; ++it) trip.emplace_back(it.row(), it.col(), Complex(it.value(), 0.0));
    for (Index k = 0; k < b.outerSize(); ++k)
      for (SparseMatrix::InnerIterator it(b, k); it; ++it) trip.emplace_back(it.row(), it.col(), Complex(0.0, it.value()));
    ComplexSparse c(f.n_, f.n_);
    c.setFromTriplets(trip.begin(), trip.end());
    c.makeCompressed();
    auto impl = std::make_shared<SparseImpl>();
    impl->lu.compute(c);
    if (impl->lu.info() != Eigen::Success) {
      throw Error(ErrorCode::SingularMatrix, "sparse complex LU failed: " + impl->lu.lastErrorMessage());
    }
    f.sparse_ = std::move(impl);
    return f;
  }
  ComplexMatrix c(f.n_, f.n_);
  c.real() = re.to_dense();
  c.imag() = im.to_dense();
  f.dense_ = std::make_shared<BunchKaufman<Complex>>(c);
  return f;
}

ComplexVector ComplexSymFactorization::solve(const ComplexVector& rhs) const {
  require_same_dimension(rhs.size(), n_, "complex symmetric solve");
  if (sparse_) return sparse_->lu.solve(rhs);
  return dense_->solve(rhs);
}

}  // namespace lhss
