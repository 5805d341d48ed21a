#include "lhss/bench/commands.hpp"

#include <cmath>
#include <fstream>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "lhss/bench/runner.hpp"
#include "lhss/numkit/dense_eigen.hpp"
#include "lhss/numkit/error.hpp"
#include "lhss/preconditioners/eigen_structure.hpp"
#include "lhss/spectral/bounds.hpp"

namespace lhss::bench {

using nlohmann::json;

namespace {

// Thrown for anything that makes the experiment itself invalid.
struct SpecFailure {
  std::string message;
};

json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }
json number(const std::optional<double>& x) { return x ? number(*x) : json(nullptr); }

std::string csv_number(double x) { return fmt::format("{:.17g}", x); }
std::string csv_number(const std::optional<double>& x) { return x ? csv_number(*x) : std::string(); }

// Quotes a CSV field when needed.
std::string csv_text(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

json complex_list(const ComplexVector& v) {
  json a = json::array();
  for (const Complex& z : v) a.push_back({z.real(), z.imag()});
  return a;
}

json real_list(const RealVector& v) {
  json a = json::array();
  for (double x : v) a.push_back(number(x));
  return a;
}

struct Prepared {
  GeneratedProblem problem;
  std::unique_ptr<ProblemAnalysis> analysis;
};

Prepared prepare(const ExperimentSpec& spec) {
  try {
    spec.validate();
    Prepared p;
    p.problem = build_problem(spec);
    p.analysis = std::make_unique<ProblemAnalysis>(p.problem.system);
    std::error_code ec;
    std::filesystem::create_directories(spec.out, ec);
    if (ec) throw Error(ErrorCode::IoError, fmt::format("cannot create {}: {}", spec.out.string(), ec.message()));
    return p;
  } catch (const Error& e) {
    throw SpecFailure{e.what()};
  }
}

std::ofstream open_output(const ExperimentSpec& spec, const char* name) {
  std::ofstream out(spec.out / name);
  if (!out) throw SpecFailure{fmt::format("cannot write {}", (spec.out / name).string())};
  return out;
}

json problem_json(const GeneratedProblem& p) {
  return {{"description", p.description}, {"n", p.system.n()}, {"kind", std::string(to_string(p.params.kind))}};
}

bool unrecoverable(const RunResult& r) {
  return r.error && r.error_code != ErrorCode::PreconditionerNotSymmetric;
}

int exit_code(const std::vector<RunResult>& results, std::ostream& log) {
  int code = kExitOk;
  for (const auto& r : results) {
    if (!r.error) continue;
    fmt::print(log, "{} {}: {}\n", r.job.run_id, r.job.run.label(), *r.error);
    if (unrecoverable(r)) code = kExitSolverError;
  }
  return code;
}

// Resolves fixed and optimal policies; failures become error results.
std::vector<RunResult> resolve_and_run(const ExperimentSpec& spec, const Prepared& prep) {
  std::vector<Job> jobs;
  std::vector<std::optional<RunResult>> early(spec.runs.size());
  std::vector<std::size_t> slot;
  for (std::size_t i = 0; i < spec.runs.size(); ++i) {
    Job job;
    job.run_id = fmt::format("r{}", i);
    job.run = spec.runs[i];
    try {
      std::string note;
      job.alpha = job.run.alpha.kind == AlphaPolicy::Kind::Fixed ? job.run.alpha.value
                                                                 : optimal_alpha_for(job.run, *prep.analysis, &note);
      job.alpha_star = job.run.alpha.kind == AlphaPolicy::Kind::Optimal;
      jobs.push_back(job);
      slot.push_back(i);
    } catch (const Error& e) {
      RunResult r;
      r.job = job;
      r.error = e.what();
      r.error_code = e.code();
      early[i] = std::move(r);
    }
  }
  auto done = execute_all(jobs, *prep.analysis, prep.problem, spec, spec.workers);
  std::vector<RunResult> results(spec.runs.size());
  for (std::size_t i = 0; i < spec.runs.size(); ++i)
    if (early[i]) results[i] = std::move(*early[i]);
  for (std::size_t k = 0; k < done.size(); ++k) results[slot[k]] = std::move(done[k]);
  return results;
}

json run_json(const RunResult& r) {
  json j;
  j["run_id"] = r.job.run_id;
  j["method"] = r.job.run.label();
  j["kind"] = r.job.run.kind == RunSpec::Kind::Stationary ? "stationary" : "krylov";
  j["alpha_policy"] = r.job.run.alpha.describe();
  j["alpha"] = number(r.job.alpha);
  if (r.error) {
    j["error"] = *r.error;
    for (const char* k : {"iterations", "wall_time", "setup_time", "converged", "status", "final_residual"})
      j[k] = nullptr;
  } else {
    j["iterations"] = r.report.iterations;
    j["wall_time"] = r.report.wall_time;
    j["setup_time"] = r.report.setup_time;
    j["converged"] = r.report.converged;
    j["status"] = std::string(to_string(r.report.status));
    j["final_residual"] = number(r.report.final_residual);
  }
  j["predicted_bound"] = number(r.predicted);
  j["note"] = r.note;
  return j;
}

template <typename Body>
int guarded(const ExperimentSpec& spec, std::ostream& log, Body body) {
  try {
    return body();
  } catch (const SpecFailure& f) {
    fmt::print(log, "spec error: {}\n", f.message);
    (void)spec;
    return kExitSpecError;
  } catch (const Error& e) {
    fmt::print(log, "error: {}\n", e.what());
    return kExitSolverError;
  }
}

}  // namespace

// ---------------------------------------------------------------- solve

int cmd_solve(const ExperimentSpec& spec, std::ostream& log) {
  return guarded(spec, log, [&] {
    for (const auto& r : spec.runs) {
      if (r.alpha.kind == AlphaPolicy::Kind::Sweep) throw SpecFailure{"solve does not take sweep policies; use sweep"};
    }
    const Prepared prep = prepare(spec);
    const auto results = resolve_and_run(spec, prep);

    json report;
    report["problem"] = problem_json(prep.problem);
    report["spec"] = to_json(spec);
    report["runs"] = json::array();
    for (const auto& r : results) report["runs"].push_back(run_json(r));
    open_output(spec, "report.json") << report.dump(2) << '\n';

    auto history = open_output(spec, "history.csv");
    history << kHistoryHeader << '\n';
    for (const auto& r : results) {
      const auto& h = r.report.residual_history;
      for (std::size_t k = 0; k < h.size(); ++k) history << r.job.run_id << ',' << k << ',' << csv_number(h[k]) << '\n';
    }
    for (const auto& r : results) {
      if (!r.error) {
        fmt::print(log, "{} {:<22} alpha={:<12.6g} IT={:<4} {} RES={:.3e}\n", r.job.run_id, r.job.run.label(),
                   r.job.alpha, r.report.iterations, to_string(r.report.status), r.report.final_residual);
      }
    }
    return exit_code(results, log);
  });
}

// ---------------------------------------------------------------- sweep

int cmd_sweep(const ExperimentSpec& spec, std::ostream& log) {
  return guarded(spec, log, [&] {
    const Prepared prep = prepare(spec);
    std::vector<Job> jobs;
    json meta = json::array();
    std::vector<RunResult> failed;
    for (std::size_t i = 0; i < spec.runs.size(); ++i) {
      const RunSpec& run = spec.runs[i];
      const std::string id = fmt::format("r{}", i);
      json m{{"run_id", id}, {"method", run.label()}};
      std::optional<double> star;
      try {
        std::string note;
        star = optimal_alpha_for(run, *prep.analysis, &note);
        m["alpha_star"] = number(*star);
        if (!note.empty()) m["note"] = note;
      } catch (const Error& e) {
        m["alpha_star"] = nullptr;
        m["alpha_star_error"] = e.what();
      }
      if (run.kind == RunSpec::Kind::Stationary && is_lopsided(run.method)) {
        try {
          const auto& s = prep.analysis->summary(summary_mode_for(run.method), run.weight);
          const auto d = convergence_domain(s, scheme_for(run.method));
          m["domain"] = {{"kind", std::string(to_string(d.kind))}, {"lower", d.lower}, {"upper", number(d.upper)}};
        } catch (const Error& e) {
          m["domain"] = "empty";
          m["domain_reason"] = e.what();
        }
      }
      AlphaPolicy policy = run.alpha;
      if (policy.kind != AlphaPolicy::Kind::Sweep) policy = AlphaPolicy::parse("sweep");
      if (!star && !(policy.lo && policy.hi)) {
        RunResult r;
        r.job = {id, run, 0.0, false};
        r.error = "sweep grid needs alpha*, which is unavailable";
        r.error_code = ErrorCode::HypothesisViolated;
        failed.push_back(r);
        meta.push_back(m);
        continue;
      }
      for (double a : sweep_grid(policy, star.value_or(1.0))) jobs.push_back({id, run, a, false});
      if (star) jobs.push_back({id, run, *star, true});
      meta.push_back(m);
    }

    const auto results = execute_all(jobs, *prep.analysis, prep.problem, spec, spec.workers);
    auto csv = open_output(spec, "sweep.csv");
    csv << kSweepHeader << '\n';
    for (const auto& r : results) {
      csv << r.job.run_id << ',' << csv_text(r.job.run.label()) << ',' << csv_number(r.job.alpha) << ',';
      if (r.error) {
        csv << ",false,," << csv_number(r.predicted) << ',' << (r.job.alpha_star ? 1 : 0) << '\n';
        continue;
      }
      csv << r.report.iterations << ',' << (r.report.converged ? "true" : "false") << ','
          << csv_number(r.report.final_residual) << ',' << csv_number(r.predicted) << ',' << (r.job.alpha_star ? 1 : 0)
          << '\n';
    }
    open_output(spec, "sweep.json") << json{{"problem", problem_json(prep.problem)}, {"runs", meta}}.dump(2) << '\n';
    fmt::print(log, "sweep: {} points over {} runs\n", results.size(), spec.runs.size());
    // A grid point may hit a singular splitting; that is a sweep outcome.
    // Only failures at α* or of a whole run decide the exit code.
    std::vector<RunResult> decisive = failed;
    std::size_t point_errors = 0;
    for (const auto& r : results) {
      if (r.job.alpha_star) {
        decisive.push_back(r);
      } else if (r.error) {
        ++point_errors;
      }
    }
    if (point_errors > 0) fmt::print(log, "{} grid points failed and are reported as not converged\n", point_errors);
    return exit_code(decisive, log);
  });
}

// ---------------------------------------------------------------- compare

int cmd_compare(const ExperimentSpec& spec, std::ostream& log) {
  return guarded(spec, log, [&] {
    ExperimentSpec expanded = spec;
    for (const auto& r : spec.runs) {
      if (r.kind != RunSpec::Kind::Krylov) throw SpecFailure{"compare takes Krylov runs (solver/preconditioner) only"};
      if (r.alpha.kind == AlphaPolicy::Kind::Sweep) throw SpecFailure{"compare does not take sweep policies"};
    }
    // One unpreconditioned row per solver that lacks it, placed first.
    std::vector<RunSpec> baseline;
    for (KrylovSolver s : {KrylovSolver::GMRES, KrylovSolver::COCG}) {
      bool used = false;
      bool plain = false;
      for (const auto& r : spec.runs) {
        used = used || r.solver == s;
        plain = plain || (r.solver == s && r.preconditioner == PreconditionerKind::Identity);
      }
      if (used && !plain) {
        RunSpec r;
        r.kind = RunSpec::Kind::Krylov;
        r.solver = s;
        baseline.push_back(r);
      }
    }
    expanded.runs.insert(expanded.runs.begin(), baseline.begin(), baseline.end());

    const Prepared prep = prepare(expanded);
    const auto results = resolve_and_run(expanded, prep);
    auto csv = open_output(expanded, "table.csv");
    csv << kTableHeader << '\n';
    for (const auto& r : results) {
      csv << to_string(r.job.run.preconditioner) << ',' << to_string(r.job.run.solver) << ','
          << csv_number(r.job.alpha) << ',';
      if (r.error) {
        csv << ",,,,,error," << csv_text(*r.error) << '\n';
        continue;
      }
      const auto& rep = r.report;
      csv << rep.iterations << ',' << csv_number(rep.wall_time) << ',' << csv_number(rep.setup_time) << ','
          << csv_number(rep.final_residual) << ',' << (rep.converged ? "true" : "false") << ','
          << to_string(rep.status) << ",\n";
      fmt::print(log, "{:<14} IT={:<4} {} RES={:.3e}\n", r.job.run.label(), rep.iterations, to_string(rep.status),
                 rep.final_residual);
    }
    return exit_code(results, log);
  });
}

// ---------------------------------------------------------------- spectrum

namespace {

json scheme_block(const ProblemAnalysis& analysis, Method method) {
  json j;
  const Scheme scheme = scheme_for(method);
  const SpectralSummary* s = nullptr;
  try {
    s = &analysis.summary(summary_mode_for(method),
                          method == Method::PLHSS_V ? WeightChoice::Identity : WeightChoice::None);
  } catch (const Error& e) {
    j["error"] = e.what();
    return j;
  }
  try {
    const OptimalAlpha opt = optimal_alpha(*s, scheme);
    j["alpha_star"] = opt.infinite ? json("inf") : number(opt.alpha);
    j["alpha_star_usable"] = number(opt.usable_alpha);
    j[scheme == Scheme::LHSS || scheme == Scheme::PLHSS_V ? "sigma_at_star" : "rho_at_star"] = number(opt.predicted);
    if (!opt.note.empty()) j["note"] = opt.note;
  } catch (const Error& e) {
    j["alpha_star"] = nullptr;
    j["alpha_star_error"] = e.what();
  }
  try {
    const auto d = convergence_domain(*s, scheme);
    j["domain"] = {{"kind", std::string(to_string(d.kind))}, {"lower", d.lower}, {"upper", number(d.upper)}};
  } catch (const Error& e) {
    j["domain"] = e.code() == ErrorCode::EmptyDomain ? "empty" : "hypothesis-violated";
    j["domain_reason"] = e.what();
  }
  return j;
}

json eigen_block(PreconditionerKind kind, const ComplexSymmetricSystem& sys, double alpha) {
  const auto rep = eigen_structure(kind, sys, alpha);
  return {{"alpha", alpha},
          {kind == PreconditionerKind::PLW ? "xi" : "tau", real_list(rep.parameters)},
          {"eta", complex_list(rep.eta)},
          {"eta_predicted", complex_list(rep.predicted_eta)},
          {"kappa2_X", number(rep.kappa2_X)},
          {"kappa2_predicted", number(rep.predicted_kappa2)},
          {"max_eta_mismatch", number(rep.max_eta_mismatch)}};
}

}  // namespace

int cmd_spectrum(const ExperimentSpec& spec, std::ostream& log) {
  return guarded(spec, log, [&] {
    const Prepared prep = prepare(spec);
    const auto& sys = prep.analysis->system();
    json out;
    out["problem"] = problem_json(prep.problem);

    const SpectralSummary& s = prep.analysis->summary(SummaryMode::Unpreconditioned);
    out["summary"] = {{"lambda_max", number(s.lambda_max)},
                      {"lambda_min", number(s.lambda_min)},
                      {"mu_min", number(s.mu_min)},
                      {"mu_1", number(s.mu_1)},
                      {"xi_max_plus", number(s.xi_max_plus)},
                      {"xi_max_minus", number(s.xi_max_minus)},
                      {"xi_max_mag", number(s.xi_max_mag)},
                      {"theta", number(theta(s))},
                      {"estimated", s.estimated},
                      {"xi", real_list(s.xi_list)}};

    json schemes;
    for (Method m : {Method::LHSS, Method::PLHSS_V, Method::PLHSS_W, Method::PLHSS_T}) {
      schemes[std::string(to_string(m))] = scheme_block(*prep.analysis, m);
    }
    schemes["PLHSS_V"]["weight"] = "identity";
    out["schemes"] = schemes;

    json eig;
    try {
      require_dense_cap(sys.n(), kDefaultDenseCap);
      eig["PLW"] = eigen_block(PreconditionerKind::PLW, sys, 1.0);
      try {
        const auto range = remark43_alpha_range(sys);
        eig["PLT"] = eigen_block(PreconditionerKind::PLT, sys, 0.5 * range.upper);
        eig["PLT"]["alpha_range"] = {range.lower, range.upper};
      } catch (const Error& e) {
        eig["PLT"] = {{"notice", e.what()}};
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DimensionTooLarge) throw;
      eig = {{"notice", e.what()}};
    }
    out["eigen_structure"] = eig;
    open_output(spec, "spectrum.json") << out.dump(2) << '\n';
    fmt::print(log, "spectrum written to {}\n", (spec.out / "spectrum.json").string());
    return kExitOk;
  });
}

}  // namespace lhss::bench
