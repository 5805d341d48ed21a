#include <chrono>
#include <cmath>
#include <vector>

#include <fmt/format.h>

#include "lhss/krylov/operator.hpp"
#include "lhss/numkit/error.hpp"

namespace lhss {

namespace {

using Clock = std::chrono::steady_clock;

// Orthogonality is considered lost when a basis projection survives MGS at
// this relative size.
constexpr double kReorthogonalizeThreshold = 1e-8;
constexpr double kBreakdownThreshold = 1e-14;

template <typename Scalar>
struct Rotation {
  double c = 1.0;
  Scalar s = Scalar(0);

  void apply(Scalar& x, Scalar& y) const {
    const Scalar top = c * x + s * y;
    y = -Eigen::numext::conj(s) * x + c * y;
    x = top;
  }

  static Rotation annihilating(const Scalar& a, const Scalar& b) {
    Rotation g;
    const double r = std::hypot(std::abs(a), std::abs(b));
    if (r == 0.0) return g;
    if (std::abs(a) == 0.0) {
      g.c = 0.0;
      g.s = Eigen::numext::conj(b) / std::abs(b);
      return g;
    }
    g.c = std::abs(a) / r;
    g.s = (a / std::abs(a)) * Eigen::numext::conj(b) / r;
    return g;
  }
};

template <typename Scalar>
OperatorSolve<Scalar> run_gmres(const OperatorProblem<Scalar>& problem, const KrylovOptions& opts) {
  using Vector = typename OperatorProblem<Scalar>::Vector;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  if (!problem.apply) throw Error(ErrorCode::InvalidArgument, "GMRES needs an operator");
  if (!(opts.tol > 0.0) || opts.max_iter < 0) throw Error(ErrorCode::InvalidArgument, "bad GMRES tolerance or budget");
  if (opts.restart && *opts.restart < 1) throw Error(ErrorCode::InvalidArgument, "GMRES restart must be at least 1");

  const auto t0 = Clock::now();
  const Vector& b = problem.rhs;
  const Index n = b.size();
  const double bnorm = b.norm();
  if (bnorm == 0.0) throw Error(ErrorCode::ZeroRhs, "right-hand side is zero");

  const auto precondition = [&](const Vector& v) -> Vector {
    return problem.precondition ? problem.precondition(v) : v;
  };
  const auto true_residual = [&](const Vector& x) -> double {
    if (problem.relative_residual) return problem.relative_residual(x);
    return (b - problem.apply(x)).norm() / bnorm;
  };

  OperatorSolve<Scalar> out;
  SolveReport& rep = out.report;
  Vector x = problem.initial_guess.value_or(Vector::Zero(n));
  require_same_dimension(x.size(), n, "initial guess");
  const double pbnorm = precondition(b).norm();

  double res = true_residual(x);
  rep.residual_history.push_back(res);
  rep.preconditioned_residual_history.push_back(1.0);
  const int cycle = opts.restart ? *opts.restart : std::max(opts.max_iter, 1);

  int k = 0;
  bool done = res <= opts.tol;
  if (done) rep.status = SolveStatus::Converged;
  while (!done && k < opts.max_iter) {
    const Vector r0 = precondition(b - problem.apply(x));
    const double beta = r0.norm();
    if (beta == 0.0) {
      rep.status = res <= opts.tol ? SolveStatus::Converged : SolveStatus::Breakdown;
      break;
    }
    const int m = std::min(cycle, opts.max_iter - k);
    std::vector<Vector> basis;
    basis.reserve(static_cast<std::size_t>(m) + 1);
    basis.push_back(r0 / beta);
    Matrix h = Matrix::Zero(m + 1, m);
    Vector g = Vector::Zero(m + 1);
    g(0) = beta;
    std::vector<Rotation<Scalar>> rotations;
    Vector x_cycle = x;

    for (int j = 0; j < m; ++j) {
      Vector w = precondition(problem.apply(basis[static_cast<std::size_t>(j)]));
      for (int i = 0; i <= j; ++i) {
        const Scalar hij = basis[static_cast<std::size_t>(i)].dot(w);
        h(i, j) += hij;
        w -= hij * basis[static_cast<std::size_t>(i)];
      }
      double wnorm = w.norm();
      double leak = 0.0;
      for (int i = 0; i <= j; ++i) leak = std::max(leak, std::abs(basis[static_cast<std::size_t>(i)].dot(w)));
      if (wnorm > 0.0 && leak > kReorthogonalizeThreshold * wnorm) {
        for (int i = 0; i <= j; ++i) {
          const Scalar hij = basis[static_cast<std::size_t>(i)].dot(w);
          h(i, j) += hij;
          w -= hij * basis[static_cast<std::size_t>(i)];
        }
        wnorm = w.norm();
      }
      const double column_scale = h.col(j).head(j + 1).norm() + wnorm;
      h(j + 1, j) = wnorm;

      for (int i = 0; i < j; ++i) rotations[static_cast<std::size_t>(i)].apply(h(i, j), h(i + 1, j));
      const auto rot = Rotation<Scalar>::annihilating(h(j, j), h(j + 1, j));
      rot.apply(h(j, j), h(j + 1, j));
      rot.apply(g(j), g(j + 1));
      rotations.push_back(rot);
      ++k;

      const Vector y = h.topLeftCorner(j + 1, j + 1).template triangularView<Eigen::Upper>().solve(g.head(j + 1));
      x_cycle = x;
      for (int i = 0; i <= j; ++i) x_cycle += y(i) * basis[static_cast<std::size_t>(i)];
      res = true_residual(x_cycle);
      rep.residual_history.push_back(res);
      rep.preconditioned_residual_history.push_back(std::abs(g(j + 1)) / pbnorm);
      if (opts.observer) opts.observer(k, res);

      if (res <= opts.tol) {
        rep.status = SolveStatus::Converged;
        done = true;
        break;
      }
      if (!std::isfinite(res) || res > kDivergenceThreshold) {
        rep.status = SolveStatus::Diverged;
        done = true;
        break;
      }
      if (wnorm <= kBreakdownThreshold * column_scale) {
        rep.status = SolveStatus::Breakdown;
        rep.note = fmt::format("Arnoldi breakdown at iteration {} with residual {:.3e}", k, res);
        done = true;
        break;
      }
      if (k >= opts.max_iter) break;
      basis.push_back(w / wnorm);
    }
    x = x_cycle;
  }

  rep.converged = rep.status == SolveStatus::Converged;
  rep.diverged = rep.status == SolveStatus::Diverged;
  rep.iterations = k;
  rep.final_residual = res;
  rep.wall_time = std::chrono::duration<double>(Clock::now() - t0).count();
  out.solution = std::move(x);
  return out;
}

}  // namespace

OperatorSolve<Complex> gmres_operator(const ComplexOperatorProblem& problem, const KrylovOptions& opts) {
  return run_gmres(problem, opts);
}

OperatorSolve<double> gmres_operator(const RealOperatorProblem& problem, const KrylovOptions& opts) {
  return run_gmres(problem, opts);
}

}  // namespace lhss
