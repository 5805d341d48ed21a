#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lhss/bench/experiment.hpp"

namespace lhss::bench {

struct Job {
  std::string run_id;
  RunSpec run;
  double alpha = 1.0;
  bool alpha_star = false;
};

struct RunResult {
  Job job;
  SolveReport report;
  std::optional<double> predicted;
  std::optional<std::string> error;  // "<Code>: message" when the run threw
  std::optional<ErrorCode> error_code;
  std::string note;
};

/// One run. Errors thrown by the solver are captured in the result.
RunResult execute(const Job& job, const ProblemAnalysis& analysis, const GeneratedProblem& problem,
                  const ExperimentSpec& spec);

/// Runs the jobs on a bounded pool of `workers` threads (0 means the hardware
/// concurrency). Results keep the order of `jobs`.
std::vector<RunResult> execute_all(const std::vector<Job>& jobs, const ProblemAnalysis& analysis,
                                   const GeneratedProblem& problem, const ExperimentSpec& spec, unsigned workers);

}  // namespace lhss::bench
