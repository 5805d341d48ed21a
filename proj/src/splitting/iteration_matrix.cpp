#include <Eigen/LU>

#include "lhss/numkit/dense_eigen.hpp"
#include "lhss/splitting/stationary.hpp"

namespace lhss {

namespace {

constexpr Complex kI(0.0, 1.0);

// X⁻¹·Y by dense partial-pivoting LU.
ComplexMatrix left_divide(const ComplexMatrix& x, const ComplexMatrix& y) {
  return x.partialPivLu().solve(y);
}

}  // namespace

ComplexMatrix iteration_matrix(const ComplexSymmetricSystem& sys, const IterationConfig& cfg, std::size_t cap) {
  require_dense_cap(sys.n(), cap);
  cfg.validate(sys.n());
  const Index n = sys.n();
  const double a = cfg.alpha;
  const ComplexMatrix w = sys.real_part().to_dense().cast<Complex>();
  const ComplexMatrix t = sys.imag_part().to_dense().cast<Complex>();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const ComplexMatrix t_inv_w = left_divide(t, w);

  switch (cfg.method) {
    case Method::LHSS:
      // i·T⁻¹W·(αI+W)⁻¹·(αI − iT)
      return kI * t_inv_w * left_divide(a * id + w, a * id - kI * t);
    case Method::PLHSS_V: {
      const ComplexMatrix v = cfg.weight->to_dense().cast<Complex>();
      return kI * t_inv_w * left_divide(a * v + w, a * v - kI * t);
    }
    case Method::PLHSS_W:
      return (kI * a * t_inv_w + id) / (a + 1.0);
    case Method::PLHSS_T:
      return Complex(1.0, a) * t_inv_w * left_divide(a * t + w, t);
    case Method::HSS:
      return left_divide(a * id + kI * t, (a * id - w) * left_divide(a * id + w, a * id - kI * t));
    case Method::PMHSS: {
      const ComplexMatrix v = cfg.weight ? ComplexMatrix(cfg.weight->to_dense().cast<Complex>()) : w;
      return left_divide(a * v + t, (a * v + kI * w) * left_divide(a * v + w, a * v - kI * t));
    }
    case Method::LPMHSS:
      return Complex(1.0, -a) * left_divide(a * w + t, t);
  }
  return {};
}

}  // namespace lhss
