#include "lhss/krylov/system_solvers.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include <fmt/format.h>

#include "lhss/numkit/error.hpp"

namespace lhss {

std::string_view to_string(KrylovSolver s) noexcept { return s == KrylovSolver::GMRES ? "GMRES" : "COCG"; }

KrylovSolver krylov_solver_from_string(std::string_view name) {
  std::string upper(name);
  std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char c) { return std::toupper(c); });
  if (upper == "GMRES") return KrylovSolver::GMRES;
  if (upper == "COCG") return KrylovSolver::COCG;
  throw Error(ErrorCode::InvalidArgument, fmt::format("unknown Krylov solver '{}'", name));
}

void KrylovConfig::validate() const {
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tol must be positive");
  if (max_iter < 0) throw Error(ErrorCode::InvalidArgument, "max_iter must be non-negative");
  if (restart && *restart < 1) throw Error(ErrorCode::InvalidArgument, "restart must be at least 1");
  if (restart && solver == KrylovSolver::COCG) throw Error(ErrorCode::InvalidArgument, "restart applies to GMRES only");
  if (initial_guess) require_finite(*initial_guess, "initial guess");
}

namespace {

bool preconditioned(const Preconditioner& p) { return p.kind() != PreconditionerKind::Identity; }

KrylovOptions options_of(const KrylovConfig& cfg) {
  KrylovOptions o;
  o.tol = cfg.tol;
  o.max_iter = cfg.max_iter;
  o.restart = cfg.restart;
  return o;
}

std::string tag_of(const KrylovConfig& cfg) {
  std::string tag(to_string(cfg.solver));
  if (preconditioned(cfg.preconditioner)) tag += fmt::format("+{}", to_string(cfg.preconditioner.kind()));
  return tag;
}

void check_dimension(const ComplexSymmetricSystem& sys, const Preconditioner& p) {
  if (preconditioned(p)) require_same_dimension(p.n(), sys.n(), "preconditioner");
}

ComplexOperatorProblem complex_problem(const ComplexSymmetricSystem& sys, const KrylovConfig& cfg) {
  const Preconditioner& p = cfg.preconditioner;
  ComplexOperatorProblem prob;
  prob.apply = [sys](const ComplexVector& v) { return sys.apply(v); };
  if (preconditioned(p)) prob.precondition = [p](const ComplexVector& v) { return p.apply(v); };
  prob.rhs = sys.rhs();
  prob.relative_residual = [sys](const ComplexVector& x) { return sys.relative_residual(x); };
  prob.initial_guess = cfg.initial_guess;
  return prob;
}

SolveReport finish(SolveReport rep, const KrylovConfig& cfg) {
  rep.method_tag = tag_of(cfg);
  if (preconditioned(cfg.preconditioner)) {
    const std::string alpha = fmt::format("alpha={:g}", cfg.preconditioner.alpha());
    rep.note = rep.note.empty() ? alpha : alpha + "; " + rep.note;
  }
  return rep;
}

}  // namespace

SolveReport gmres(const ComplexSymmetricSystem& sys, const KrylovConfig& cfg) {
  cfg.validate();
  if (cfg.solver != KrylovSolver::GMRES) throw Error(ErrorCode::InvalidArgument, "gmres needs solver GMRES");
  check_dimension(sys, cfg.preconditioner);
  const Preconditioner& p = cfg.preconditioner;

  if (p.operates_on_real_form()) {
    RealOperatorProblem prob;
    prob.apply = [sys](const RealVector& v) { return real_form_apply(sys, v); };
    prob.precondition = [p](const RealVector& v) { return p.apply_real(v); };
    prob.rhs = real_form_rhs(sys.rhs());
    prob.relative_residual = [sys](const RealVector& v) { return sys.relative_residual(from_real_form(v)); };
    if (cfg.initial_guess) prob.initial_guess = to_real_form(*cfg.initial_guess);
    auto solved = gmres_operator(prob, options_of(cfg));
    solved.report.solution = from_real_form(solved.solution);
    return finish(std::move(solved.report), cfg);
  }
  auto solved = gmres_operator(complex_problem(sys, cfg), options_of(cfg));
  solved.report.solution = std::move(solved.solution);
  return finish(std::move(solved.report), cfg);
}

SolveReport cocg(const ComplexSymmetricSystem& sys, const KrylovConfig& cfg) {
  cfg.validate();
  if (cfg.solver != KrylovSolver::COCG) throw Error(ErrorCode::InvalidArgument, "cocg needs solver COCG");
  check_dimension(sys, cfg.preconditioner);
  if (!cfg.preconditioner.is_complex_symmetric()) {
    throw Error(ErrorCode::PreconditionerNotSymmetric,
                fmt::format("COCG needs a complex symmetric preconditioner, {} is not",
                            to_string(cfg.preconditioner.kind())));
  }
  auto solved = cocg_operator(complex_problem(sys, cfg), options_of(cfg));
  solved.report.solution = std::move(solved.solution);
  return finish(std::move(solved.report), cfg);
}

SolveReport krylov_solve(const ComplexSymmetricSystem& sys, const KrylovConfig& cfg) {
  return cfg.solver == KrylovSolver::GMRES ? gmres(sys, cfg) : cocg(sys, cfg);
}

}  // namespace lhss
