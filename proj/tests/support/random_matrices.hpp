#pragma once

#include <random>

#include <Eigen/Dense>
#include <Eigen/QR>

namespace lhss::testing {

inline Eigen::MatrixXd random_gaussian(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = nd(rng);
  return m;
}

inline Eigen::MatrixXd random_orthogonal_matrix(Eigen::Index n, std::mt19937_64& rng) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(random_gaussian(n, n, rng));
  return qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
}

inline Eigen::MatrixXd random_symmetric(Eigen::Index n, std::mt19937_64& rng) {
  Eigen::MatrixXd g = random_gaussian(n, n, rng);
  Eigen::MatrixXd s = 0.5 * (g + g.transpose());
  return s;
}

/// Q·diag(d)·Qᵀ, symmetrized exactly.
inline Eigen::MatrixXd with_spectrum(const Eigen::VectorXd& d, std::mt19937_64& rng) {
  Eigen::MatrixXd q = random_orthogonal_matrix(d.size(), rng);
  Eigen::MatrixXd m = q * d.asDiagonal() * q.transpose();
  return 0.5 * (m + m.transpose());
}

inline Eigen::MatrixXd random_spd(Eigen::Index n, std::mt19937_64& rng, double lo = 0.5, double hi = 5.0) {
  std::uniform_real_distribution<double> ud(lo, hi);
  Eigen::VectorXd d(n);
  for (Eigen::Index i = 0; i < n; ++i) d(i) = ud(rng);
  return with_spectrum(d, rng);
}

/// Symmetric, nonsingular, at least one eigenvalue of each sign.
inline Eigen::MatrixXd random_indefinite(Eigen::Index n, std::mt19937_64& rng, double lo = 0.3, double hi = 4.0) {
  std::uniform_real_distribution<double> ud(lo, hi);
  Eigen::VectorXd d(n);
  for (Eigen::Index i = 0; i < n; ++i) d(i) = (i % 2 == 0 ? 1.0 : -1.0) * ud(rng);
  return with_spectrum(d, rng);
}

inline Eigen::VectorXcd random_complex_vector(Eigen::Index n, std::mt19937_64& rng) {
  Eigen::VectorXcd v(n);
  v.real() = random_gaussian(n, 1, rng);
  v.imag() = random_gaussian(n, 1, rng);
  return v;
}

// κ₂ from the symmetric eigenvalues (SPD input).
inline double condition_number(const Eigen::MatrixXd& spd) {
  const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(spd, Eigen::EigenvaluesOnly).eigenvalues();
  return ev(ev.size() - 1) / ev(0);
}

}  // namespace lhss::testing
