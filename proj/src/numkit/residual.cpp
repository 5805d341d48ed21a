#include "lhss/numkit/residual.hpp"

#include "lhss/numkit/error.hpp"

namespace lhss {

ComplexVector apply_complex_symmetric(const RealSymMatrix& W, const RealSymMatrix& T, const ComplexVector& x) {
  require_same_dimension(W.n(), T.n(), "W and T");
  require_same_dimension(x.size(), W.n(), "operand");
  const RealVector xr = x.real();
  const RealVector xi = x.imag();
  const RealVector wr = W.apply(xr), wi = W.apply(xi);
  const RealVector tr = T.apply(xr), ti = T.apply(xi);
  ComplexVector out(x.size());
  out.real() = wr - ti;
  out.imag() = wi + tr;
  return out;
}

double relative_residual(const RealSymMatrix& W, const RealSymMatrix& T, const ComplexVector& x,
                         const ComplexVector& b) {
  require_same_dimension(b.size(), W.n(), "right-hand side");
  const double bnorm = b.norm();
  if (bnorm == 0.0) throw Error(ErrorCode::ZeroRhs, "right-hand side has zero norm");
  return (b - apply_complex_symmetric(W, T, x)).norm() / bnorm;
}

}  // namespace lhss
