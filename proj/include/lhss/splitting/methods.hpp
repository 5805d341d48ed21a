#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lhss/numkit/matrix.hpp"

namespace lhss {

enum class Method { LHSS, PLHSS_V, PLHSS_W, PLHSS_T, HSS, PMHSS, LPMHSS };

std::string_view to_string(Method m) noexcept;
/// Case-insensitive; accepts "-" in place of "_". Throws InvalidArgument.
Method method_from_string(std::string_view name);
bool is_lopsided(Method m) noexcept;  // LHSS and the PLHSS family
bool is_baseline(Method m) noexcept;  // HSS, PMHSS, LPMHSS

struct IterationConfig {
  Method method = Method::LHSS;
  double alpha = 1.0;
  /// The SPD weight V. Required for PLHSS_V. For PMHSS it overrides the
  /// default weight W (pass the identity for the classical MHSS). Ignored
  /// by every other method.
  std::optional<RealSymMatrix> weight;
  double tol = 1e-8;
  int max_iter = 500;
  std::optional<ComplexVector> initial_guess;

  /// Throws InvalidArgument or DimensionMismatch.
  void validate(Index n) const;
};

enum class SolveStatus { Converged, MaxIterations, Diverged, Breakdown };
std::string_view to_string(SolveStatus s) noexcept;

struct SolveReport {
  bool converged = false;
  bool diverged = false;
  SolveStatus status = SolveStatus::MaxIterations;
  int iterations = 0;
  /// True relative residual per iteration, index 0 is the initial guess.
  std::vector<double> residual_history;
  /// Krylov solvers only: the residual of the preconditioned system.
  std::vector<double> preconditioned_residual_history;
  double final_residual = 0.0;
  ComplexVector solution;
  double wall_time = 0.0;   // iteration loop, seconds
  double setup_time = 0.0;  // factorizations, seconds
  std::string method_tag;
  std::string note;
};

/// Relative residual above which an iteration is declared divergent.
inline constexpr double kDivergenceThreshold = 1e8;

}  // namespace lhss
