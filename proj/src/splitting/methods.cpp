#include "lhss/splitting/methods.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <utility>

#include "lhss/numkit/error.hpp"

namespace lhss {

namespace {

constexpr std::array<std::pair<Method, std::string_view>, 7> kNames{{
    {Method::LHSS, "LHSS"},
    {Method::PLHSS_V, "PLHSS_V"},
    {Method::PLHSS_W, "PLHSS_W"},
    {Method::PLHSS_T, "PLHSS_T"},
    {Method::HSS, "HSS"},
    {Method::PMHSS, "PMHSS"},
    {Method::LPMHSS, "LPMHSS"},
}};

}  // namespace

std::string_view to_string(Method m) noexcept {
  for (const auto& [method, name] : kNames)
    if (method == m) return name;
  return "?";
}

Method method_from_string(std::string_view name) {
  std::string canon(name);
  std::transform(canon.begin(), canon.end(), canon.begin(), [](unsigned char c) {
    return c == '-' ? '_' : static_cast<char>(std::toupper(c));
  });
  for (const auto& [method, text] : kNames)
    if (text == canon) return method;
  throw Error(ErrorCode::InvalidArgument, "unknown method '" + std::string(name) + "'");
}

bool is_lopsided(Method m) noexcept {
  return m == Method::LHSS || m == Method::PLHSS_V || m == Method::PLHSS_W || m == Method::PLHSS_T;
}

bool is_baseline(Method m) noexcept { return !is_lopsided(m); }

void IterationConfig::validate(Index n) const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw Error(ErrorCode::InvalidArgument, "alpha must be positive and finite");
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tol must be positive");
  if (max_iter < 1) throw Error(ErrorCode::InvalidArgument, "max_iter must be at least 1");
  if (method == Method::PLHSS_V && !weight) throw Error(ErrorCode::InvalidArgument, "PLHSS_V needs a weight matrix V");
  if (weight) require_same_dimension(weight->n(), n, "weight matrix V");
  if (initial_guess) {
    require_same_dimension(initial_guess->size(), n, "initial guess");
    require_finite(*initial_guess, "initial guess");
  }
}

std::string_view to_string(SolveStatus s) noexcept {
  switch (s) {
    case SolveStatus::Converged: return "converged";
    case SolveStatus::MaxIterations: return "max_iterations";
    case SolveStatus::Diverged: return "diverged";
    case SolveStatus::Breakdown: return "breakdown";
  }
  return "?";
}

}  // namespace lhss
