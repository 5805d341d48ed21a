#pragma once

#include <limits>
#include <string>
#include <string_view>

#include "lhss/spectral/summary.hpp"
#include "lhss/splitting/methods.hpp"

namespace lhss {

enum class Scheme { LHSS, PLHSS_V, PLHSS_W, PLHSS_T };
std::string_view to_string(Scheme s) noexcept;
/// Throws InvalidArgument for the baseline methods.
Scheme scheme_for(Method m);

/// Finite stand-in for an infinite optimal parameter.
inline constexpr double kAlphaCap = 1e6;
/// Below this |α + ξ| the closed-form ρ for the V=T scheme is reported as +∞.
inline constexpr double kPoleGuard = 1e-6;

/// σ(α) = λ_max/(α+λ_max) · √(α²+μ_min²)/μ_min.
double sigma_bound(double alpha, const SpectralSummary& s);
/// (1/(α+1))·√(α²ξ²+1) with ξ = max|ξᵢ|.
double rho_plhss_w(double alpha, double xi_max_mag);
/// √(1+α²)·maxᵢ |ξᵢ|/|α+ξᵢ|; +∞ if some |α+ξᵢ| ≤ kPoleGuard.
double rho_plhss_t(double alpha, const RealVector& xi);
/// Θ = 1/ξ⁻ + 1/ξ⁺. Throws HypothesisViolated if either extreme is missing.
double theta(const SpectralSummary& s);

/// σ for LHSS/PLHSS_V, the exact closed-form ρ for PLHSS_W/PLHSS_T.
double predicted_rate(double alpha, const SpectralSummary& s, Scheme scheme);

struct OptimalAlpha {
  double alpha = 0.0;  // +∞ when `infinite`
  bool infinite = false;
  /// alpha, or kAlphaCap when infinite.
  double usable_alpha = 0.0;
  /// σ(α*) for LHSS/PLHSS_V, ρ(α*) for PLHSS_W/PLHSS_T (at usable_alpha).
  double predicted = 0.0;
  std::string note;
};

/// Throws HypothesisViolated for PLHSS_T unless ξ⁻ ∈ (−1, 0).
OptimalAlpha optimal_alpha(const SpectralSummary& s, Scheme scheme);

enum class DomainKind { D_I, D_V, D_W, D_T };
std::string_view to_string(DomainKind k) noexcept;

struct ConvergenceDomain {
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();
  DomainKind kind = DomainKind::D_I;
  bool upper_is_infinite() const noexcept { return upper == std::numeric_limits<double>::infinity(); }
  bool contains(double alpha) const noexcept { return alpha > lower && alpha < upper; }
};

/// Throws HypothesisViolated (PLHSS_T without ξ⁻ ∈ (−1,0)) and EmptyDomain
/// (PLHSS_T with ξ⁻·ξ⁺ ≤ −1).
ConvergenceDomain convergence_domain(const SpectralSummary& s, Scheme scheme);

/// max |eig(G)| of the configured method's dense iteration matrix.
double exact_rho(const ComplexSymmetricSystem& sys, const IterationConfig& cfg, std::size_t cap = kDefaultDenseCap);

}  // namespace lhss
