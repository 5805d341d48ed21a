#pragma once

#include <iosfwd>
#include <string_view>

#include "lhss/bench/experiment.hpp"

namespace lhss::bench {

inline constexpr int kExitOk = 0;
inline constexpr int kExitSpecError = 2;
inline constexpr int kExitSolverError = 3;

// Stable CSV headers.
inline constexpr std::string_view kHistoryHeader = "run_id,k,RES";
inline constexpr std::string_view kSweepHeader =
    "run_id,method,alpha,iterations,converged,final_residual,predicted_bound,alpha_star";
inline constexpr std::string_view kTableHeader =
    "preconditioner,solver,alpha,iterations,wall_time,setup_time,final_residual,converged,status,error";

/// Each command validates the spec (exit 2 on failure), writes its files
/// into spec.out and returns 0, or 3 when a run failed with an error other
/// than a documented rejection (COCG with a non-symmetric preconditioner).
/// Progress and errors go to `log`.
///
///   solve     report.json, history.csv
///   sweep     sweep.csv, sweep.json (α* and convergence domain per run)
///   compare   table.csv (Krylov runs; an unpreconditioned row is added)
///   spectrum  spectrum.json
int cmd_solve(const ExperimentSpec& spec, std::ostream& log);
int cmd_sweep(const ExperimentSpec& spec, std::ostream& log);
int cmd_compare(const ExperimentSpec& spec, std::ostream& log);
int cmd_spectrum(const ExperimentSpec& spec, std::ostream& log);

}  // namespace lhss::bench
