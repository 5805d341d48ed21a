#pragma once

#include <cstddef>

#include "lhss/numkit/matrix.hpp"

namespace lhss {

struct SymEigenResult {
  RealVector values;     // ascending
  RealMatrix vectors;    // orthonormal columns, vectors.col(i) pairs with values(i)
};

/// Dense symmetric eigendecomposition. Throws DimensionTooLarge when n > cap.
SymEigenResult dense_sym_eigen(const RealSymMatrix& m, std::size_t cap = kDefaultDenseCap);
/// Same, for a matrix already held densely (symmetry is assumed, only the
/// lower triangle is read).
SymEigenResult dense_sym_eigen(const RealMatrix& m, std::size_t cap = kDefaultDenseCap);
RealVector dense_sym_eigenvalues(const RealMatrix& m, std::size_t cap = kDefaultDenseCap);

/// Eigenvalues of a general complex square matrix (unordered).
/// Throws DimensionTooLarge or NoConvergence.
ComplexVector dense_complex_eigenvalues(const ComplexMatrix& m, std::size_t cap = kDefaultDenseCap);

/// max |λ| over the eigenvalues of m.
double spectral_radius(const ComplexMatrix& m, std::size_t cap = kDefaultDenseCap);

/// σ_max / σ_min of a general complex matrix (2-norm condition number).
double spectral_condition_number(const ComplexMatrix& m, std::size_t cap = kDefaultDenseCap);

void require_dense_cap(Index n, std::size_t cap);

}  // namespace lhss
