#pragma once

#include "lhss/preconditioners/preconditioner.hpp"

namespace lhss {

/// Eigenvalues of P⁻¹A computed densely next to their closed-form
/// predictions. The eigenvector matrix X diagonalizes P⁻¹A:
///   PLW: X = W^{-1/2}·Q, Q the eigenvectors of W^{1/2}·T⁻¹·W^{1/2} (values ξ)
///        η = α/(α+1)·(1 − iξ), κ₂(X) = √κ₂(W)
///   PLT: X = S^{-1/2}·P with S = αT+W SPD, P the eigenvectors of
///        S^{-1/2}·(T − αW)·S^{-1/2} (values τ)
///        η = α/(α+i)·(1 + iτ), κ₂(X) = √κ₂(S)
struct EigenStructureReport {
  PreconditionerKind mode = PreconditionerKind::PLW;
  double alpha = 0.0;
  ComplexVector eta;            // dense eigenvalues of P⁻¹A, canonical order
  ComplexVector predicted_eta;  // closed form, canonical order
  double kappa2_X = 0.0;        // from the singular values of X
  double predicted_kappa2 = 0.0;
  double max_eta_mismatch = 0.0;
  RealVector parameters;        // ξ (PLW) or τ (PLT), ascending
  RealMatrix eigenvectors;      // X, column j pairs with eigenvector_eta(j)
  ComplexVector eigenvector_eta;
};

/// Throws InvalidArgument for kinds other than PLW/PLT, DimensionTooLarge
/// above cap, NotPositiveDefinite when αT+W is not SPD (PLT).
EigenStructureReport eigen_structure(PreconditionerKind kind, const ComplexSymmetricSystem& sys, double alpha,
                                     std::size_t cap = kDefaultDenseCap);

/// Sorts lexicographically by (re, im).
ComplexVector canonical_order(ComplexVector v);
/// Greedy nearest-neighbour matching of two equal-size multisets after
/// canonical ordering; returns the largest matched distance.
double matched_distance(const ComplexVector& a, const ComplexVector& b);

/// τ = (1 − αξ)/(α + ξ) and its inverse ξ = (1 − ατ)/(α + τ).
/// Throw PoleError when the denominator magnitude is ≤ 1e−12.
double remark41_map(double xi, double alpha);
double remark41_inverse_map(double tau, double alpha);

struct AlphaInterval {
  double lower = 0.0;
  double upper = 0.0;
};

/// (0, −λ_min(W)/μ₁(T)), μ₁ the most negative eigenvalue of T. Every α inside
/// makes αT+W SPD. Throws NotIndefinite if T has no negative eigenvalue.
AlphaInterval remark43_alpha_range(const ComplexSymmetricSystem& sys);

}  // namespace lhss
