#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <fmt/format.h>
#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "lhss/bench/commands.hpp"
#include "lhss/bench/runner.hpp"
#include "lhss/numkit/error.hpp"
#include "lhss/problem_gen/suites.hpp"
#include "lhss/spectral/bounds.hpp"

namespace lhss::bench {
namespace {

using nlohmann::json;

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("lhss_bench_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

std::vector<std::string> lines_of(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<std::string> fields(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  for (std::string f; std::getline(ss, f, ',');) out.push_back(f);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

json read_json(const std::filesystem::path& p) {
  std::ifstream in(p);
  return json::parse(in);
}

RunSpec stationary(Method m, const std::string& alpha = "opt") {
  RunSpec r;
  r.method = m;
  r.alpha = AlphaPolicy::parse(alpha);
  return r;
}

RunSpec krylov(PreconditionerKind k, KrylovSolver s = KrylovSolver::GMRES) {
  RunSpec r;
  r.kind = RunSpec::Kind::Krylov;
  r.solver = s;
  r.preconditioner = k;
  return r;
}

ExperimentSpec spec_for(const std::string& problem, std::vector<RunSpec> runs, const std::string& out) {
  ExperimentSpec s;
  s.problem.name = problem;
  s.runs = std::move(runs);
  s.out = scratch(out);
  s.workers = 1;
  return s;
}

// One row of sweep.csv.
struct SweepRow {
  std::string method;
  double alpha;
  int iterations;
  bool converged;
  bool star;
};

std::vector<SweepRow> sweep_rows(const std::filesystem::path& csv) {
  std::vector<SweepRow> rows;
  const auto lines = lines_of(csv);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = fields(lines[i]);
    rows.push_back({f[1], std::stod(f[2]), f[3].empty() ? -1 : std::stoi(f[3]), f[4] == "true", f[7] == "1"});
  }
  return rows;
}

// ---------------------------------------------------------------- golden headers

TEST(Golden, CsvHeaders) {
  EXPECT_EQ(kHistoryHeader, "run_id,k,RES");
  EXPECT_EQ(kSweepHeader, "run_id,method,alpha,iterations,converged,final_residual,predicted_bound,alpha_star");
  EXPECT_EQ(kTableHeader,
            "preconditioner,solver,alpha,iterations,wall_time,setup_time,final_residual,converged,status,error");
}

TEST(Golden, ReportFields) {
  auto spec = spec_for("reference", {stationary(Method::PLHSS_W)}, "golden_report");
  std::ostringstream log;
  ASSERT_EQ(cmd_solve(spec, log), kExitOk) << log.str();
  const json report = read_json(spec.out / "report.json");
  for (const char* key : {"problem", "spec", "runs"}) EXPECT_TRUE(report.contains(key)) << key;
  const json& run = report["runs"][0];
  for (const char* key : {"run_id", "method", "kind", "alpha_policy", "alpha", "iterations", "wall_time",
                          "setup_time", "converged", "status", "final_residual", "predicted_bound", "note"}) {
    EXPECT_TRUE(run.contains(key)) << key;
  }
  EXPECT_EQ(lines_of(spec.out / "history.csv").front(), kHistoryHeader);
}

TEST(Golden, SpectrumFields) {
  auto spec = spec_for("reference", {stationary(Method::LHSS)}, "golden_spectrum");
  std::ostringstream log;
  ASSERT_EQ(cmd_spectrum(spec, log), kExitOk) << log.str();
  const json s = read_json(spec.out / "spectrum.json");
  for (const char* key : {"lambda_max", "lambda_min", "mu_min", "mu_1", "xi_max_plus", "xi_max_minus", "xi_max_mag",
                          "theta", "estimated", "xi"}) {
    EXPECT_TRUE(s["summary"].contains(key)) << key;
  }
  for (const char* scheme : {"LHSS", "PLHSS_V", "PLHSS_W", "PLHSS_T"}) EXPECT_TRUE(s["schemes"].contains(scheme));
  for (const char* key : {"alpha", "eta", "eta_predicted", "kappa2_X", "kappa2_predicted", "max_eta_mismatch"}) {
    EXPECT_TRUE(s["eigen_structure"]["PLW"].contains(key)) << key;
    EXPECT_TRUE(s["eigen_structure"]["PLT"].contains(key)) << key;
  }
}

// ---------------------------------------------------------------- spec parsing

TEST(Spec, ParsesAndRoundTrips) {
  const json doc = json::parse(R"({
    "problem": {"helmholtz": {"n": 50, "dim": "1D", "shift": 30000, "damping": 0.01}},
    "runs": [{"method": "PLHSS_T", "alpha": "opt"},
             {"method": "plhss-v", "alpha": 2.5, "weight": "identity"},
             {"solver": "COCG", "preconditioner": "PLW"},
             {"solver": "GMRES", "preconditioner": "HSS", "alpha": "sweep:0.1:10:5", "restart": 20}],
    "tol": 1e-10, "max_iter": 300, "seed": 9, "out": "results", "initial_guess": "exact", "workers": 2
  })");
  const ExperimentSpec s = parse_spec(doc);
  ASSERT_EQ(s.runs.size(), 4u);
  EXPECT_EQ(s.runs[1].method, Method::PLHSS_V);
  EXPECT_EQ(s.runs[1].weight, WeightChoice::Identity);
  EXPECT_EQ(s.runs[1].alpha.kind, AlphaPolicy::Kind::Fixed);
  EXPECT_EQ(s.runs[2].solver, KrylovSolver::COCG);
  EXPECT_EQ(s.runs[3].alpha.count, 5);
  EXPECT_EQ(*s.runs[3].restart, 20);
  EXPECT_EQ(s.problem.helmholtz_n, 50);
  EXPECT_TRUE(s.start_from_exact);
  EXPECT_EQ(s.tol, 1e-10);
  EXPECT_EQ(to_json(parse_spec(to_json(s))), to_json(s));
}

TEST(Spec, Rejections) {
  const auto bad = [](const char* text) {
    try {
      (void)parse_spec(json::parse(text)).validate();
    } catch (const Error&) {
      return true;
    }
    return false;
  };
  EXPECT_TRUE(bad(R"({"runs": []})"));
  EXPECT_TRUE(bad(R"({})"));
  EXPECT_TRUE(bad(R"({"runs": [{"method": "LHSS", "solver": "GMRES"}]})"));
  EXPECT_TRUE(bad(R"({"runs": [{"method": "LHSS"}], "tol": 0})"));
  EXPECT_TRUE(bad(R"({"runs": [{"method": "LHSS", "alpha": -1}]})"));
  EXPECT_TRUE(bad(R"({"runs": [{"method": "LHSS", "alpha": "sweep:2:1:5"}]})"));
  EXPECT_TRUE(bad(R"({"runs": [{"method": "PLHSS_V"}]})"));
  EXPECT_TRUE(bad(R"({"runs": [{"method": "NOPE"}]})"));
  EXPECT_TRUE(bad(R"({"runs": [{"method": "LHSS"}], "initial_guess": "random"})"));
  EXPECT_FALSE(bad(R"({"runs": [{"method": "LHSS"}]})"));
}

TEST(Spec, AlphaPolicies) {
  EXPECT_EQ(AlphaPolicy::parse("opt").kind, AlphaPolicy::Kind::Optimal);
  EXPECT_EQ(AlphaPolicy::parse("0.25").value, 0.25);
  const auto sweep = AlphaPolicy::parse("sweep:0.01:100:41");
  EXPECT_EQ(sweep.count, 41);
  const auto grid = sweep_grid(sweep, 1.0);
  ASSERT_EQ(grid.size(), 41u);
  EXPECT_NEAR(grid.front(), 0.01, 1e-15);
  EXPECT_NEAR(grid.back(), 100.0, 1e-12);
  EXPECT_TRUE(std::is_sorted(grid.begin(), grid.end()));
  const auto centred = sweep_grid(AlphaPolicy::parse("sweep"), 4.0);
  EXPECT_EQ(centred.size(), 41u);
  EXPECT_NEAR(centred[20], 4.0, 1e-12);
  EXPECT_NEAR(centred.front(), 0.04, 1e-14);
  EXPECT_THROW((void)AlphaPolicy::parse("sweep:1:2"), Error);
  EXPECT_THROW((void)AlphaPolicy::parse("fast"), Error);
}

// ---------------------------------------------------------------- exit codes

TEST(ExitCodes, SpecErrorsAreTwo) {
  std::ostringstream log;
  auto empty = spec_for("reference", {}, "exit_empty");
  EXPECT_EQ(cmd_solve(empty, log), kExitSpecError);
  auto missing = spec_for("reference", {stationary(Method::LHSS)}, "exit_missing");
  missing.problem.w_file = "/nonexistent/W.mtx";
  missing.problem.t_file = "/nonexistent/T.mtx";
  EXPECT_EQ(cmd_solve(missing, log), kExitSpecError);
  auto unknown = spec_for("no-such-problem", {stationary(Method::LHSS)}, "exit_unknown");
  EXPECT_EQ(cmd_solve(unknown, log), kExitSpecError);
  auto sweep_in_solve = spec_for("reference", {stationary(Method::LHSS, "sweep")}, "exit_sweep");
  EXPECT_EQ(cmd_solve(sweep_in_solve, log), kExitSpecError);
  auto stationary_in_compare = spec_for("reference", {stationary(Method::LHSS)}, "exit_compare");
  EXPECT_EQ(cmd_compare(stationary_in_compare, log), kExitSpecError);
}

TEST(ExitCodes, SolverErrorIsThreeWithPartialResults) {
  // reference-lhss has ξ⁻ = −2, so the V=T analysis has no α*.
  auto spec = spec_for("reference-lhss", {stationary(Method::LHSS), stationary(Method::PLHSS_T)}, "exit_three");
  std::ostringstream log;
  EXPECT_EQ(cmd_solve(spec, log), kExitSolverError);
  const json report = read_json(spec.out / "report.json");
  ASSERT_EQ(report["runs"].size(), 2u);
  EXPECT_TRUE(report["runs"][0]["converged"].get<bool>());
  EXPECT_FALSE(report["runs"][0].contains("error"));
  EXPECT_NE(report["runs"][1]["error"].get<std::string>().find("HypothesisViolated"), std::string::npos);
  EXPECT_TRUE(report["runs"][1]["iterations"].is_null());
}

// ---------------------------------------------------------------- solve

TEST(Solve, ExactInitialGuessGivesZeroIterations) {
  std::vector<RunSpec> runs = {stationary(Method::LHSS), stationary(Method::PLHSS_W), stationary(Method::PLHSS_T),
                               stationary(Method::HSS),  stationary(Method::PMHSS),   krylov(PreconditionerKind::PLW),
                               krylov(PreconditionerKind::CtoR), krylov(PreconditionerKind::PLW, KrylovSolver::COCG)};
  auto spec = spec_for("helmholtz-low", runs, "exact_guess");
  spec.start_from_exact = true;
  std::ostringstream log;
  ASSERT_EQ(cmd_solve(spec, log), kExitOk) << log.str();
  for (const auto& r : read_json(spec.out / "report.json")["runs"]) {
    EXPECT_EQ(r["iterations"].get<int>(), 0) << r["method"];
    EXPECT_TRUE(r["converged"].get<bool>());
  }
}

TEST(Solve, IdenticalRunsGiveIdenticalRows) {
  auto spec = spec_for("reference", {stationary(Method::PLHSS_T), stationary(Method::PLHSS_T)}, "determinism");
  std::ostringstream log;
  ASSERT_EQ(cmd_solve(spec, log), kExitOk);
  std::map<std::string, std::vector<std::string>> by_run;
  const auto lines = lines_of(spec.out / "history.csv");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = fields(lines[i]);
    by_run[f[0]].push_back(f[1] + "," + f[2]);
  }
  ASSERT_EQ(by_run.size(), 2u);
  EXPECT_EQ(by_run["r0"], by_run["r1"]);
  const json report = read_json(spec.out / "report.json");
  auto a = report["runs"][0];
  auto b = report["runs"][1];
  for (auto* j : {&a, &b}) {
    j->erase("run_id");
    j->erase("wall_time");
    j->erase("setup_time");
  }
  EXPECT_EQ(a, b);
}

TEST(Solve, ParallelWorkersKeepOrder) {
  std::vector<RunSpec> runs = {stationary(Method::PLHSS_T), krylov(PreconditionerKind::PLW),
                               stationary(Method::PMHSS), krylov(PreconditionerKind::HSS),
                               stationary(Method::PLHSS_W)};
  auto serial = spec_for("helmholtz-mid", runs, "serial");
  auto parallel = spec_for("helmholtz-mid", runs, "parallel");
  parallel.workers = 3;
  std::ostringstream log;
  ASSERT_EQ(cmd_solve(serial, log), kExitOk);
  ASSERT_EQ(cmd_solve(parallel, log), kExitOk);
  EXPECT_EQ(lines_of(serial.out / "history.csv"), lines_of(parallel.out / "history.csv"));
}

TEST(Solve, StationaryOrderingOnIndefiniteProblem) {
  for (const auto& name : {"helmholtz-low", "helmholtz-mid", "helmholtz-high"}) {
    auto spec = spec_for(name, {stationary(Method::PLHSS_T), stationary(Method::PMHSS), stationary(Method::HSS)},
                         "ordering");
    std::ostringstream log;
    ASSERT_EQ(cmd_solve(spec, log), kExitOk);
    const json runs = read_json(spec.out / "report.json")["runs"];
    EXPECT_TRUE(runs[0]["converged"].get<bool>());
    EXPECT_TRUE(runs[1]["converged"].get<bool>());
    EXPECT_LT(runs[0]["iterations"].get<int>(), runs[1]["iterations"].get<int>());
    EXPECT_FALSE(runs[2]["converged"].get<bool>()) << name;
    EXPECT_DOUBLE_EQ(runs[1]["alpha"].get<double>(), 1.0);
  }
}

// ---------------------------------------------------------------- sweep

TEST(Sweep, PlhssWFlatBasinOnReference) {
  auto spec = spec_for("reference", {stationary(Method::PLHSS_W, "sweep:0.01:100:41")}, "sweep_w");
  spec.max_iter = 5000;
  std::ostringstream log;
  ASSERT_EQ(cmd_sweep(spec, log), kExitOk) << log.str();
  const auto rows = sweep_rows(spec.out / "sweep.csv");
  ASSERT_EQ(rows.size(), 42u);
  int grid_min = 1 << 30;
  int at_star = -1;
  for (const auto& r : rows) {
    EXPECT_TRUE(r.converged) << "alpha " << r.alpha;  // D_W = (0, ∞)
    if (r.star) {
      at_star = r.iterations;
      EXPECT_NEAR(r.alpha, 4.0, 1e-12);
    } else {
      grid_min = std::min(grid_min, r.iterations);
    }
  }
  EXPECT_LE(at_star, grid_min + 2);
  const json meta = read_json(spec.out / "sweep.json");
  EXPECT_EQ(meta["runs"][0]["domain"]["kind"], "D_W");
}

TEST(Sweep, OutsideFiniteDomainDoesNotConverge) {
  const auto sys = named_problem("reference-lhss").system;
  const auto domain = convergence_domain(summarize(sys), Scheme::LHSS);
  ASSERT_FALSE(domain.upper_is_infinite());
  const double outside = 1.5 * domain.upper;
  auto spec = spec_for("reference-lhss",
                       {stationary(Method::LHSS, fmt::format("sweep:{0:.17g}:{0:.17g}:1", outside))}, "sweep_out");
  std::ostringstream log;
  ASSERT_EQ(cmd_sweep(spec, log), kExitOk) << log.str();
  const auto rows = sweep_rows(spec.out / "sweep.csv");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_TRUE(!rows[0].converged || rows[0].iterations == 500);
  EXPECT_TRUE(rows[1].star);
  EXPECT_TRUE(domain.contains(rows[1].alpha));
}

TEST(Sweep, AlphaStarRowInsideDomain) {
  for (const auto& name : {"reference", "helmholtz-low", "helmholtz-high"}) {
    auto spec = spec_for(name, {stationary(Method::LHSS, "sweep:0.1:10:3"), stationary(Method::PLHSS_W, "sweep:0.1:10:3"),
                                stationary(Method::PLHSS_T, "sweep:0.1:10:3")},
                         "sweep_star");
    std::ostringstream log;
    ASSERT_EQ(cmd_sweep(spec, log), kExitOk) << log.str();
    const json meta = read_json(spec.out / "sweep.json");
    for (const auto& run : meta["runs"]) {
      if (!run["domain"].is_object()) continue;
      const double star = run["alpha_star"].get<double>();
      EXPECT_GT(star, run["domain"]["lower"].get<double>()) << name << " " << run["method"];
      if (!run["domain"]["upper"].is_null()) {
        EXPECT_LT(star, run["domain"]["upper"].get<double>());
      }
    }
  }
}

// ---------------------------------------------------------------- compare

std::map<std::string, std::vector<std::string>> table_rows(const std::filesystem::path& csv) {
  std::map<std::string, std::vector<std::string>> rows;
  const auto lines = lines_of(csv);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = fields(lines[i]);
    rows[f[0] + "/" + f[1]] = f;
  }
  return rows;
}

TEST(Compare, GmresOrderingOnSuite) {
  for (const auto& name : {"helmholtz-low", "helmholtz-mid", "helmholtz-high"}) {
    auto spec = spec_for(name, {krylov(PreconditionerKind::PLW), krylov(PreconditionerKind::PLT),
                                krylov(PreconditionerKind::PMHSS), krylov(PreconditionerKind::HSS)},
                         "compare");
    std::ostringstream log;
    ASSERT_EQ(cmd_compare(spec, log), kExitOk) << log.str();
    auto rows = table_rows(spec.out / "table.csv");
    ASSERT_EQ(rows.size(), 5u);  // plus the unpreconditioned row
    const auto it = [&](const char* k) { return std::stoi(rows.at(std::string(k) + "/GMRES")[3]); };
    EXPECT_LE(it("PLW"), it("PMHSS"));
    EXPECT_LE(it("PMHSS"), it("HSS"));
    EXPECT_LE(std::abs(it("PLW") - it("PLT")), 1);
    EXPECT_GT(it("Identity"), it("PLW"));
    EXPECT_GT(it("Identity"), it("PLT"));
  }
}

TEST(Compare, CocgRejectsCtoRInItsRow) {
  auto spec = spec_for("reference", {krylov(PreconditionerKind::PLW, KrylovSolver::COCG),
                                     krylov(PreconditionerKind::CtoR, KrylovSolver::COCG)},
                       "compare_cocg");
  std::ostringstream log;
  EXPECT_EQ(cmd_compare(spec, log), kExitOk);
  const auto lines = lines_of(spec.out / "table.csv");
  ASSERT_EQ(lines.size(), 4u);
  EXPECT_EQ(lines[0], kTableHeader);
  EXPECT_EQ(lines[1].rfind("Identity,COCG,", 0), 0u);
  EXPECT_NE(lines[3].find("PreconditionerNotSymmetric"), std::string::npos);
}

// ---------------------------------------------------------------- spectrum

TEST(Spectrum, ReferenceValues) {
  auto spec = spec_for("reference-lhss", {stationary(Method::LHSS)}, "spectrum_lhss");
  std::ostringstream log;
  ASSERT_EQ(cmd_spectrum(spec, log), kExitOk);
  const json lhss = read_json(spec.out / "spectrum.json")["schemes"]["LHSS"];
  EXPECT_NEAR(lhss["alpha_star"].get<double>(), 0.5, 1e-12);
  EXPECT_NEAR(lhss["sigma_at_star"].get<double>(), 0.894427, 1e-6);

  auto ref = spec_for("reference", {stationary(Method::LHSS)}, "spectrum_ref");
  ASSERT_EQ(cmd_spectrum(ref, log), kExitOk);
  const json plw = read_json(ref.out / "spectrum.json")["eigen_structure"]["PLW"];
  EXPECT_NEAR(plw["kappa2_predicted"].get<double>(), 1.264911, 1e-6);
  EXPECT_LE(plw["max_eta_mismatch"].get<double>(), 1e-6);
}

TEST(Spectrum, EmptyDomainIsNamed) {
  // ξ = (2.5, −0.6): ξ⁻ ∈ (−1, 0) but ξ⁻·ξ⁺ = −1.5 ≤ −1
  RealVector lambda(2), mu(2);
  lambda << 1.0, 1.2;
  mu << 0.4, -2.0;
  const auto dir = scratch("empty_domain_files");
  write_problem(generate_prescribed(lambda, mu, Coupling::Diagonal, 0), dir);
  auto spec = spec_for("", {stationary(Method::LHSS)}, "spectrum_empty");
  spec.problem.w_file = dir / "W.mtx";
  spec.problem.t_file = dir / "T.mtx";
  std::ostringstream log;
  ASSERT_EQ(cmd_spectrum(spec, log), kExitOk) << log.str();
  const json t = read_json(spec.out / "spectrum.json")["schemes"]["PLHSS_T"];
  EXPECT_EQ(t["domain"], "empty");
  EXPECT_NE(t["domain_reason"].get<std::string>().find("EmptyDomain"), std::string::npos);
}

TEST(Spectrum, LargeProblemUsesEstimates) {
  // Above the dense cap, with well separated extremes: λ ∈ {0.5, 4} ∪ [1, 2],
  // |μ| ∈ {0.2, 0.25} ∪ [1, 3].
  const Index n = 2100;
  RealVector lambda(n), mu(n);
  lambda(0) = 0.5;
  mu(0) = 0.2;
  lambda(1) = 4.0;
  mu(1) = -0.25;
  for (Index i = 2; i < n; ++i) {
    const double frac = static_cast<double>(i - 2) / static_cast<double>(n - 3);
    lambda(i) = 1.0 + frac;
    mu(i) = (i % 2 == 0 ? -1.0 : 1.0) * (1.0 + 2.0 * frac);
  }
  const auto dir = scratch("large_files");
  write_problem(generate_prescribed(lambda, mu, Coupling::Diagonal, 0), dir);
  auto spec = spec_for("", {stationary(Method::LHSS)}, "spectrum_large");
  spec.problem.w_file = dir / "W.mtx";
  spec.problem.t_file = dir / "T.mtx";
  std::ostringstream log;
  ASSERT_EQ(cmd_spectrum(spec, log), kExitOk) << log.str();
  const json s = read_json(spec.out / "spectrum.json");
  EXPECT_TRUE(s["eigen_structure"].contains("notice"));
  const json& summary = s["summary"];
  EXPECT_TRUE(summary["estimated"].get<bool>());
  EXPECT_NEAR(summary["lambda_max"].get<double>(), 4.0, 4e-6);
  EXPECT_NEAR(summary["lambda_min"].get<double>(), 0.5, 5e-7);
  EXPECT_NEAR(summary["mu_min"].get<double>(), 0.2, 2e-7);
  EXPECT_TRUE(summary["mu_1"].is_null());
  EXPECT_NEAR(summary["xi_max_plus"].get<double>(), 2.5, 2.5e-6);
  EXPECT_NEAR(summary["xi_max_minus"].get<double>(), -16.0, 1.6e-5);
}

TEST(Spectrum, UncertifiedEstimateIsAnError) {
  // 1D stiffness: the top of W clusters with relative gaps near 1e-6, so 500
  // Lanczos steps cannot certify λ_max.
  ExperimentSpec spec;
  spec.problem.helmholtz = HelmholtzOptions{};
  spec.problem.helmholtz->damping = 0.01;
  spec.problem.helmholtz_n = 2100;
  spec.problem.helmholtz->shift = suite_shift(2100, 2);
  spec.runs = {stationary(Method::LHSS)};
  spec.out = scratch("spectrum_uncertified");
  std::ostringstream log;
  EXPECT_EQ(cmd_spectrum(spec, log), kExitSolverError);
  EXPECT_NE(log.str().find("EstimationFailed"), std::string::npos) << log.str();
}

}  // namespace
}  // namespace lhss::bench
