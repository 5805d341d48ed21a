#include "lhss/splitting/stationary.hpp"

#include <chrono>
#include <cmath>
#include <memory>

#include "lhss/numkit/error.hpp"

namespace lhss {

namespace {

constexpr Complex kI(0.0, 1.0);

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

RealSymMatrix weight_for_pmhss(const ComplexSymmetricSystem& sys, const IterationConfig& cfg) {
  return cfg.weight ? *cfg.weight : sys.real_part();
}

}  // namespace

StationaryIteration StationaryIteration::build(const ComplexSymmetricSystem& sys, const IterationConfig& cfg) {
  cfg.validate(sys.n());
  const double a = cfg.alpha;
  const RealSymMatrix& w = sys.real_part();
  const RealSymMatrix& t = sys.imag_part();
  const ComplexVector& b = sys.rhs();

  StationaryIteration it;
  it.tag_ = std::string(to_string(cfg.method));

  switch (cfg.method) {
    case Method::LHSS: {
      auto shifted = std::make_shared<SpdFactorization>(SpdFactorization::factorize(w.shifted(a)));
      const auto& tf = sys.imag_factor();
      it.step_ = [=, &tf, keep = sys](const ComplexVector& x) {
        const ComplexVector half = shifted->solve(ComplexVector(a * x - kI * t.apply(x) + b));
        return tf.solve(ComplexVector(kI * w.apply(half) - kI * b));
      };
      break;
    }
    case Method::PLHSS_V: {
      const RealSymMatrix v = *cfg.weight;
      try {
        SpdFactorization::factorize(v);
      } catch (const Error& e) {
        throw Error(e.code(), std::string("weight V: ") + e.what());
      }
      auto shifted = std::make_shared<SpdFactorization>(
          SpdFactorization::factorize(RealSymMatrix::combine(a, v, 1.0, w)));
      const auto& tf = sys.imag_factor();
      it.step_ = [=, &tf, keep = sys](const ComplexVector& x) {
        const ComplexVector half = shifted->solve(ComplexVector(a * v.apply(x) - kI * t.apply(x) + b));
        return tf.solve(ComplexVector(kI * w.apply(half) - kI * b));
      };
      break;
    }
    case Method::PLHSS_W: {
      const auto& tf = sys.imag_factor();
      const double s = 1.0 / (a + 1.0);
      it.step_ = [=, &tf, keep = sys](const ComplexVector& x) {
        return tf.solve(ComplexVector(s * (kI * a * w.apply(x) + t.apply(x)) - (a * s) * kI * b));
      };
      break;
    }
    case Method::PLHSS_T: {
      auto shifted = std::make_shared<SymIndefFactorization>(
          SymIndefFactorization::factorize(RealSymMatrix::combine(a, t, 1.0, w)));
      const auto& tf = sys.imag_factor();
      it.step_ = [=, &tf, keep = sys](const ComplexVector& x) {
        const ComplexVector half = shifted->solve(ComplexVector(Complex(a, -1.0) * t.apply(x) + b));
        return tf.solve(ComplexVector(kI * w.apply(half) - kI * b));
      };
      break;
    }
    case Method::HSS: {
      auto first = std::make_shared<SpdFactorization>(SpdFactorization::factorize(w.shifted(a)));
      auto second = std::make_shared<ComplexSymFactorization>(
          ComplexSymFactorization::factorize(RealSymMatrix::identity(sys.n(), t.layout()).scaled(a), t));
      it.step_ = [=](const ComplexVector& x) {
        const ComplexVector half = first->solve(ComplexVector(a * x - kI * t.apply(x) + b));
        return second->solve(ComplexVector(a * half - w.apply(half) + b));
      };
      break;
    }
    case Method::PMHSS: {
      const RealSymMatrix v = weight_for_pmhss(sys, cfg);
      auto first = std::make_shared<SpdFactorization>(
          SpdFactorization::factorize(RealSymMatrix::combine(a, v, 1.0, w)));
      auto second = std::make_shared<SymIndefFactorization>(
          SymIndefFactorization::factorize(RealSymMatrix::combine(a, v, 1.0, t)));
      it.tag_ = cfg.weight ? "PMHSS(V)" : "PMHSS";
      it.step_ = [=](const ComplexVector& x) {
        const ComplexVector half = first->solve(ComplexVector(a * v.apply(x) - kI * t.apply(x) + b));
        return second->solve(ComplexVector(a * v.apply(half) + kI * w.apply(half) - kI * b));
      };
      break;
    }
    case Method::LPMHSS: {
      const auto& wf = sys.real_factor();
      auto second = std::make_shared<SymIndefFactorization>(
          SymIndefFactorization::factorize(RealSymMatrix::combine(a, w, 1.0, t)));
      it.step_ = [=, &wf, keep = sys](const ComplexVector& x) {
        const ComplexVector half = wf.solve(ComplexVector(b - kI * t.apply(x)));
        return second->solve(ComplexVector(Complex(a, 1.0) * w.apply(half) - kI * b));
      };
      break;
    }
  }
  return it;
}

SolveReport solve_stationary(const ComplexSymmetricSystem& sys, const IterationConfig& cfg) {
  const auto t_setup = Clock::now();
  const StationaryIteration it = StationaryIteration::build(sys, cfg);
  SolveReport report;
  report.setup_time = seconds_since(t_setup);
  report.method_tag = it.tag();

  const auto t_loop = Clock::now();
  ComplexVector x = cfg.initial_guess ? *cfg.initial_guess : ComplexVector::Zero(sys.n());
  double res = sys.relative_residual(x);
  report.residual_history.push_back(res);
  int k = 0;
  while (true) {
    if (res <= cfg.tol) {
      report.converged = true;
      report.status = SolveStatus::Converged;
      break;
    }
    if (!std::isfinite(res) || res > kDivergenceThreshold) {
      report.diverged = true;
      report.status = SolveStatus::Diverged;
      break;
    }
    if (k >= cfg.max_iter) {
      report.status = SolveStatus::MaxIterations;
      break;
    }
    x = it.step(x);
    ++k;
    res = sys.relative_residual(x);
    report.residual_history.push_back(res);
  }
  report.iterations = k;
  report.final_residual = res;
  report.solution = std::move(x);
  report.wall_time = seconds_since(t_loop);
  return report;
}

SolveReport lhss_solve(const ComplexSymmetricSystem& sys, const IterationConfig& cfg) {
  if (cfg.method != Method::LHSS) throw Error(ErrorCode::InvalidArgument, "lhss_solve needs method LHSS");
  return solve_stationary(sys, cfg);
}

SolveReport plhss_solve(const ComplexSymmetricSystem& sys, const IterationConfig& cfg) {
  if (cfg.method != Method::PLHSS_V && cfg.method != Method::PLHSS_W && cfg.method != Method::PLHSS_T) {
    throw Error(ErrorCode::InvalidArgument, "plhss_solve needs a PLHSS method");
  }
  return solve_stationary(sys, cfg);
}

SolveReport baseline_solve(const ComplexSymmetricSystem& sys, const IterationConfig& cfg) {
  if (!is_baseline(cfg.method)) throw Error(ErrorCode::InvalidArgument, "baseline_solve needs HSS, PMHSS or LPMHSS");
  return solve_stationary(sys, cfg);
}

}  // namespace lhss
