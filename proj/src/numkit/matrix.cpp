#include "lhss/numkit/matrix.hpp"

#include <cmath>
#include <string>

#include "lhss/numkit/error.hpp"

namespace lhss {

namespace {

void require_square_nonempty(Index rows, Index cols) {
  if (rows != cols) {
    throw Error(ErrorCode::InvalidArgument,
                "matrix is not square (" + std::to_string(rows) + "x" + std::to_string(cols) + ")");
  }
  if (rows < 1) throw Error(ErrorCode::InvalidArgument, "matrix dimension must be >= 1");
}

void require_finite_value(double v) {
  if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "matrix entry is not finite");
}

}  // namespace

RealSymMatrix RealSymMatrix::from_dense(const RealMatrix& m) {
  require_square_nonempty(m.rows(), m.cols());
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = j; i < m.rows(); ++i) {
      require_finite_value(m(i, j));
      if (m(i, j) != m(j, i)) {
        throw Error(ErrorCode::InvalidArgument, "matrix is not exactly symmetric at (" +
                                                    std::to_string(i) + "," + std::to_string(j) + ")");
      }
    }
  }
  RealSymMatrix out;
  out.n_ = m.rows();
  out.storage_ = m;
  return out;
}

RealSymMatrix RealSymMatrix::from_dense_symmetrized(const RealMatrix& m) {
  require_square_nonempty(m.rows(), m.cols());
  RealMatrix s = 0.5 * (m + m.transpose());
  return from_dense(s);
}

RealSymMatrix RealSymMatrix::from_sparse(const SparseMatrix& m) {
  require_square_nonempty(m.rows(), m.cols());
  SparseMatrix c = m;
  c.prune(0.0);
  c.makeCompressed();
  SparseMatrix t = c.transpose();
  for (Index k = 0; k < c.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(c, k); it; ++it) require_finite_value(it.value());
  }
  if ((c - t).norm() != 0.0) throw Error(ErrorCode::InvalidArgument, "sparse matrix is not exactly symmetric");
  RealSymMatrix out;
  out.n_ = c.rows();
  out.storage_ = std::move(c);
  return out;
}

RealSymMatrix RealSymMatrix::from_lower_triplets(Index n, std::span<const Triplet> lower, Layout layout) {
  require_square_nonempty(n, n);
  std::vector<Triplet> full;
  full.reserve(2 * lower.size());
  for (const auto& t : lower) {
    if (t.row() < 0 || t.col() < 0 || t.row() >= n || t.col() >= n) {
      throw Error(ErrorCode::InvalidArgument, "triplet index out of range");
    }
    if (t.row() < t.col()) throw Error(ErrorCode::InvalidArgument, "triplet is not in the lower triangle");
    require_finite_value(t.value());
    full.emplace_back(t.row(), t.col(), t.value());
    if (t.row() != t.col()) full.emplace_back(t.col(), t.row(), t.value());
  }
  SparseMatrix s(n, n);
  s.setFromTriplets(full.begin(), full.end());
  s.makeCompressed();
  RealSymMatrix out;
  out.n_ = n;
  if (layout == Layout::Dense) {
    out.storage_ = RealMatrix(s);
  } else {
    s.prune(0.0);
    out.storage_ = std::move(s);
  }
  return out;
}

RealSymMatrix RealSymMatrix::identity(Index n, Layout layout) {
  return diagonal(RealVector::Ones(n), layout);
}

RealSymMatrix RealSymMatrix::diagonal(const RealVector& d, Layout layout) {
  std::vector<Triplet> t;
  for (Index i = 0; i < d.size(); ++i) t.emplace_back(i, i, d(i));
  return from_lower_triplets(d.size(), t, layout);
}

Layout RealSymMatrix::layout() const noexcept {
  return std::holds_alternative<SparseMatrix>(storage_) ? Layout::Sparse : Layout::Dense;
}

double RealSymMatrix::entry(Index i, Index j) const {
  if (i < 0 || j < 0 || i >= n_ || j >= n_) throw Error(ErrorCode::InvalidArgument, "entry index out of range");
  if (const auto* d = std::get_if<RealMatrix>(&storage_)) return (*d)(i, j);
  return std::get<SparseMatrix>(storage_).coeff(i, j);
}

RealMatrix RealSymMatrix::to_dense() const {
  if (const auto* d = std::get_if<RealMatrix>(&storage_)) return *d;
  return RealMatrix(std::get<SparseMatrix>(storage_));
}

SparseMatrix RealSymMatrix::to_sparse() const {
  if (const auto* s = std::get_if<SparseMatrix>(&storage_)) return *s;
  SparseMatrix s = std::get<RealMatrix>(storage_).sparseView();
  s.makeCompressed();
  return s;
}

RealSymMatrix RealSymMatrix::with_layout(Layout target) const {
  if (target == layout()) return *this;
  RealSymMatrix out;
  out.n_ = n_;
  if (target == Layout::Dense) {
    out.storage_ = to_dense();
  } else {
    out.storage_ = to_sparse();
  }
  return out;
}

std::vector<Triplet> RealSymMatrix::lower_triplets() const {
  std::vector<Triplet> out;
  if (const auto* d = std::get_if<RealMatrix>(&storage_)) {
    for (Index j = 0; j < n_; ++j) {
      for (Index i = j; i < n_; ++i) {
        if ((*d)(i, j) != 0.0) out.emplace_back(i, j, (*d)(i, j));
      }
    }
    return out;
  }
  const auto& s = std::get<SparseMatrix>(storage_);
  for (Index k = 0; k < s.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(s, k); it; ++it) {
      if (it.row() >= it.col() && it.value() != 0.0) out.emplace_back(it.row(), it.col(), it.value());
    }
  }
  return out;
}

RealVector RealSymMatrix::apply(const RealVector& x) const {
  require_same_dimension(x.size(), n_, "matrix-vector product");
  if (const auto* d = std::get_if<RealMatrix>(&storage_)) return (*d) * x;
  return std::get<SparseMatrix>(storage_) * x;
}

ComplexVector RealSymMatrix::apply(const ComplexVector& x) const {
  require_same_dimension(x.size(), n_, "matrix-vector product");
  RealVector re = apply(RealVector(x.real()));
  RealVector im = apply(RealVector(x.imag()));
  ComplexVector out(n_);
  out.real() = re;
  out.imag() = im;
  return out;
}

double RealSymMatrix::max_abs() const {
  if (const auto* d = std::get_if<RealMatrix>(&storage_)) return d->cwiseAbs().maxCoeff();
  const auto& s = std::get<SparseMatrix>(storage_);
  double m = 0.0;
  for (Index k = 0; k < s.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(s, k); it; ++it) m = std::max(m, std::abs(it.value()));
  }
  return m;
}

double RealSymMatrix::frobenius_norm() const {
  if (const auto* d = std::get_if<RealMatrix>(&storage_)) return d->norm();
  return std::get<SparseMatrix>(storage_).norm();
}

RealVector RealSymMatrix::diagonal_entries() const {
  if (const auto* d = std::get_if<RealMatrix>(&storage_)) return d->diagonal();
  return std::get<SparseMatrix>(storage_).diagonal();
}

RealSymMatrix RealSymMatrix::combine(double a, const RealSymMatrix& A, double b, const RealSymMatrix& B) {
  require_same_dimension(A.n(), B.n(), "matrix combination");
  RealSymMatrix out;
  out.n_ = A.n();
  if (A.is_sparse() && B.is_sparse()) {
    SparseMatrix s = a * std::get<SparseMatrix>(A.storage_) + b * std::get<SparseMatrix>(B.storage_);
    s.prune(0.0);
    s.makeCompressed();
    out.storage_ = std::move(s);
  } else {
    out.storage_ = RealMatrix(a * A.to_dense() + b * B.to_dense());
  }
  return out;
}

RealSymMatrix RealSymMatrix::shifted(double alpha) const {
  return combine(1.0, *this, alpha, identity(n_, layout()));
}

RealSymMatrix RealSymMatrix::scaled(double a) const {
  RealSymMatrix out;
  out.n_ = n_;
  if (const auto* d = std::get_if<RealMatrix>(&storage_)) {
    out.storage_ = RealMatrix(a * (*d));
  } else {
    out.storage_ = SparseMatrix(a * std::get<SparseMatrix>(storage_));
  }
  return out;
}

bool operator==(const RealSymMatrix& a, const RealSymMatrix& b) {
  if (a.n() != b.n()) return false;
  return (a.to_dense() - b.to_dense()).cwiseAbs().maxCoeff() == 0.0;
}

void require_finite(const ComplexVector& v, const char* what) {
  for (Index i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v(i).real()) || !std::isfinite(v(i).imag())) {
      throw Error(ErrorCode::InvalidArgument, std::string(what) + " has a non-finite entry");
    }
  }
}

void require_same_dimension(Index a, Index b, const char* what) {
  if (a != b) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + ": dimensions " + std::to_string(a) + " and " + std::to_string(b));
  }
}

}  // namespace lhss
