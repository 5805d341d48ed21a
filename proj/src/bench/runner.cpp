#include "lhss/bench/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <thread>

#include <fmt/format.h>

#include "lhss/numkit/error.hpp"
#include "lhss/splitting/stationary.hpp"

namespace lhss::bench {

namespace {

SolveReport run_stationary(const Job& job, const ComplexSymmetricSystem& sys, const GeneratedProblem& problem,
                           const ExperimentSpec& spec) {
  IterationConfig cfg;
  cfg.method = job.run.method;
  cfg.alpha = job.alpha;
  cfg.weight = weight_matrix(job.run.weight, sys);
  cfg.tol = spec.tol;
  cfg.max_iter = spec.max_iter;
  if (spec.start_from_exact && problem.exact_solution) cfg.initial_guess = problem.exact_solution;
  return solve_stationary(sys, cfg);
}

SolveReport run_krylov(const Job& job, const ComplexSymmetricSystem& sys, const GeneratedProblem& problem,
                       const ExperimentSpec& spec) {
  KrylovConfig cfg;
  cfg.solver = job.run.solver;
  cfg.tol = spec.tol;
  cfg.max_iter = spec.max_iter;
  cfg.restart = job.run.restart;
  if (spec.start_from_exact && problem.exact_solution) cfg.initial_guess = problem.exact_solution;
  const auto t0 = std::chrono::steady_clock::now();
  if (job.run.preconditioner != PreconditionerKind::Identity) {
    std::optional<RealSymMatrix> weight;
    if (job.run.preconditioner == PreconditionerKind::PMHSS) weight = weight_matrix(job.run.weight, sys);
    cfg.preconditioner = Preconditioner::build(job.run.preconditioner, sys, job.alpha, weight);
  }
  const double setup = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  SolveReport rep = krylov_solve(sys, cfg);
  rep.setup_time = setup;
  return rep;
}

}  // namespace

RunResult execute(const Job& job, const ProblemAnalysis& analysis, const GeneratedProblem& problem,
                  const ExperimentSpec& spec) {
  RunResult r;
  r.job = job;
  const auto& sys = analysis.system();
  try {
    r.report = job.run.kind == RunSpec::Kind::Stationary ? run_stationary(job, sys, problem, spec)
                                                         : run_krylov(job, sys, problem, spec);
    r.note = r.report.note;
  } catch (const Error& e) {
    r.error = e.what();
    r.error_code = e.code();
  } catch (const std::exception& e) {
    r.error = fmt::format("InternalError: {}", e.what());
  }
  r.predicted = predicted_bound(job.run, analysis, job.alpha);
  return r;
}

std::vector<RunResult> execute_all(const std::vector<Job>& jobs, const ProblemAnalysis& analysis,
                                   const GeneratedProblem& problem, const ExperimentSpec& spec, unsigned workers) {
  std::vector<RunResult> results(jobs.size());
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(jobs.size(), 1)));
  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) results[i] = execute(jobs[i], analysis, problem, spec);
  };
  if (workers <= 1) {
    work();
    return results;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  pool.clear();  // joins
  return results;
}

}  // namespace lhss::bench
