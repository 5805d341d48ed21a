#include "lhss/problem_gen/suites.hpp"

#include <fmt/format.h>

#include "lhss/numkit/error.hpp"

namespace lhss {

namespace {

GeneratedProblem diagonal_pair(std::initializer_list<double> w, std::initializer_list<double> t, const char* name) {
  RealVector lambda(static_cast<Index>(w.size()));
  RealVector mu(static_cast<Index>(t.size()));
  Index i = 0;
  for (double v : w) lambda(i++) = v;
  i = 0;
  for (double v : t) mu(i++) = v;
  GeneratedProblem p = generate_prescribed(lambda, mu, Coupling::Diagonal, 0);
  p.description = fmt::format("{}: {}", name, p.description);
  return p;
}

GeneratedProblem suite_member(Index lower_index, const char* name) {
  HelmholtzOptions opts;
  opts.damping = kSuiteDamping;
  opts.mass = 1.0;
  opts.shift = suite_shift(kSuiteDimension, lower_index);
  GeneratedProblem p = generate_helmholtz_like(kSuiteDimension, opts);
  p.description = fmt::format("{}: {}", name, p.description);
  return p;
}

}  // namespace

double suite_shift(Index n, Index lower_index) {
  const RealVector pencil = helmholtz_pencil_eigenvalues(n, GridDim::One);
  if (lower_index < 1 || lower_index >= n) throw Error(ErrorCode::InvalidArgument, "pencil index out of range");
  return 0.5 * (pencil(lower_index - 1) + pencil(lower_index));
}

std::vector<std::string> problem_names() {
  return {"reference", "reference-lhss", "helmholtz-low", "helmholtz-mid", "helmholtz-high"};
}

GeneratedProblem named_problem(const std::string& name) {
  if (name == "reference") return diagonal_pair({0.5, 0.8}, {1.0, -2.0}, "reference");
  if (name == "reference-lhss") return diagonal_pair({1.0, 2.0}, {1.0, -1.0}, "reference-lhss");
  if (name == "helmholtz-low") return suite_member(1, "helmholtz-low");
  if (name == "helmholtz-mid") return suite_member(3, "helmholtz-mid");
  if (name == "helmholtz-high") return suite_member(8, "helmholtz-high");
  throw Error(ErrorCode::InvalidArgument, fmt::format("unknown problem '{}'", name));
}

std::vector<GeneratedProblem> helmholtz_suite() {
  return {named_problem("helmholtz-low"), named_problem("helmholtz-mid"), named_problem("helmholtz-high")};
}

std::vector<GeneratedProblem> reference_suite() {
  return {named_problem("reference"), named_problem("reference-lhss")};
}

}  // namespace lhss
