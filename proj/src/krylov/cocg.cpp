#include <chrono>
#include <cmath>

#include <fmt/format.h>

#include "lhss/krylov/operator.hpp"
#include "lhss/numkit/error.hpp"

namespace lhss {

namespace {

constexpr double kBilinearBreakdown = 1e-14;

// uᵀv without conjugation.
Complex bilinear(const ComplexVector& u, const ComplexVector& v) { return (u.array() * v.array()).sum(); }

}  // namespace

OperatorSolve<Complex> cocg_operator(const ComplexOperatorProblem& problem, const KrylovOptions& opts) {
  if (!problem.apply) throw Error(ErrorCode::InvalidArgument, "COCG needs an operator");
  if (!(opts.tol > 0.0) || opts.max_iter < 0) throw Error(ErrorCode::InvalidArgument, "bad COCG tolerance or budget");

  const auto t0 = std::chrono::steady_clock::now();
  const ComplexVector& b = problem.rhs;
  const double bnorm = b.norm();
  if (bnorm == 0.0) throw Error(ErrorCode::ZeroRhs, "right-hand side is zero");
  const auto precondition = [&](const ComplexVector& v) -> ComplexVector {
    return problem.precondition ? problem.precondition(v) : v;
  };
  const auto true_residual = [&](const ComplexVector& x) -> double {
    if (problem.relative_residual) return problem.relative_residual(x);
    return (b - problem.apply(x)).norm() / bnorm;
  };

  OperatorSolve<Complex> out;
  SolveReport& rep = out.report;
  ComplexVector x = problem.initial_guess.value_or(ComplexVector::Zero(b.size()));
  require_same_dimension(x.size(), b.size(), "initial guess");
  ComplexVector r = b - problem.apply(x);
  ComplexVector z = precondition(r);
  const double z0 = z.norm();
  ComplexVector p = z;
  Complex rho = bilinear(r, z);

  double res = true_residual(x);
  rep.residual_history.push_back(res);
  rep.preconditioned_residual_history.push_back(1.0);
  int k = 0;
  if (res <= opts.tol) rep.status = SolveStatus::Converged;

  const auto breakdown = [&](const char* what, Complex value, double scale) {
    rep.status = SolveStatus::Breakdown;
    rep.note = fmt::format("BilinearBreakdown: {} = {:.3e} (scale {:.3e}) at iteration {}", what, std::abs(value),
                           scale, k);
  };

  while (rep.status != SolveStatus::Converged && k < opts.max_iter) {
    if (std::abs(rho) <= kBilinearBreakdown * r.norm() * z.norm()) {
      breakdown("r^T z", rho, r.norm() * z.norm());
      break;
    }
    const ComplexVector q = problem.apply(p);
    const Complex denom = bilinear(p, q);
    if (std::abs(denom) <= kBilinearBreakdown * p.norm() * q.norm()) {
      breakdown("p^T A p", denom, p.norm() * q.norm());
      break;
    }
    const Complex step = rho / denom;
    x += step * p;
    r -= step * q;
    ++k;

    res = true_residual(x);
    z = precondition(r);
    rep.residual_history.push_back(res);
    rep.preconditioned_residual_history.push_back(z.norm() / z0);
    if (opts.observer) opts.observer(k, res);
    if (res <= opts.tol) {
      rep.status = SolveStatus::Converged;
      break;
    }
    if (!std::isfinite(res) || res > kDivergenceThreshold) {
      rep.status = SolveStatus::Diverged;
      break;
    }
    const Complex rho_next = bilinear(r, z);
    p = z + (rho_next / rho) * p;
    rho = rho_next;
  }

  rep.converged = rep.status == SolveStatus::Converged;
  rep.diverged = rep.status == SolveStatus::Diverged;
  rep.iterations = k;
  rep.final_residual = res;
  rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  out.solution = std::move(x);
  return out;
}

}  // namespace lhss
