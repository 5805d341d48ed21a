#pragma once

#include <string>
#include <vector>

#include "lhss/problem_gen/generators.hpp"

namespace lhss {

/// Named problems:
///   reference        W = diag(0.5, 0.8), T = diag(1, −2)
///   reference-lhss   W = diag(1, 2),     T = diag(1, −1)
///   helmholtz-low    1D, n = 400, damping 0.01, shift between pencil eigenvalues 1 and 2
///   helmholtz-mid    same, between eigenvalues 3 and 4
///   helmholtz-high   same, between eigenvalues 8 and 9
/// Throws InvalidArgument for an unknown name.
GeneratedProblem named_problem(const std::string& name);
std::vector<std::string> problem_names();

/// The three helmholtz-* problems in increasing indefiniteness.
std::vector<GeneratedProblem> helmholtz_suite();
/// reference and reference-lhss.
std::vector<GeneratedProblem> reference_suite();

/// Parameters shared by the helmholtz-* problems.
inline constexpr Index kSuiteDimension = 400;
inline constexpr double kSuiteDamping = 0.01;

/// Shift midway between pencil eigenvalues `lower_index` and lower_index+1
/// (1-based) for the suite discretization.
double suite_shift(Index n, Index lower_index);

}  // namespace lhss
