#include "lhss/spectral/bounds.hpp"

#include <cmath>

#include "lhss/numkit/dense_eigen.hpp"
#include "lhss/numkit/error.hpp"
#include "lhss/splitting/stationary.hpp"

namespace lhss {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_positive_alpha(double alpha) {
  if (!(alpha > 0.0)) throw Error(ErrorCode::InvalidArgument, "alpha must be positive");
}

// The V=T analysis needs ξ⁻ ∈ (−1, 0) and some positive ξ.
std::pair<double, double> xi_pair_for_t_scheme(const SpectralSummary& s) {
  if (!s.xi_max_minus || !s.xi_max_plus) {
    throw Error(ErrorCode::HypothesisViolated, "T^{-1}W needs eigenvalues of both signs for the V=T scheme");
  }
  const double minus = *s.xi_max_minus;
  if (!(minus > -1.0 && minus < 0.0)) {
    throw Error(ErrorCode::HypothesisViolated,
                "V=T scheme requires xi_max_minus in (-1,0), got " + std::to_string(minus));
  }
  return {minus, *s.xi_max_plus};
}

RealVector xi_for_rate(const SpectralSummary& s) {
  if (s.xi_list.size() > 0) return s.xi_list;
  RealVector ends(2);
  ends << s.xi_max_minus.value_or(s.xi_max_plus.value_or(0.0)), s.xi_max_plus.value_or(s.xi_max_minus.value_or(0.0));
  return ends;
}

}  // namespace

std::string_view to_string(Scheme s) noexcept {
  switch (s) {
    case Scheme::LHSS: return "LHSS";
    case Scheme::PLHSS_V: return "PLHSS_V";
    case Scheme::PLHSS_W: return "PLHSS_W";
    case Scheme::PLHSS_T: return "PLHSS_T";
  }
  return "?";
}

std::string_view to_string(DomainKind k) noexcept {
  switch (k) {
    case DomainKind::D_I: return "D_I";
    case DomainKind::D_V: return "D_V";
    case DomainKind::D_W: return "D_W";
    case DomainKind::D_T: return "D_T";
  }
  return "?";
}

Scheme scheme_for(Method m) {
  switch (m) {
    case Method::LHSS: return Scheme::LHSS;
    case Method::PLHSS_V: return Scheme::PLHSS_V;
    case Method::PLHSS_W: return Scheme::PLHSS_W;
    case Method::PLHSS_T: return Scheme::PLHSS_T;
    default: break;
  }
  throw Error(ErrorCode::InvalidArgument, "no spectral scheme for baseline method " + std::string(to_string(m)));
}

double sigma_bound(double alpha, const SpectralSummary& s) {
  if (!(alpha >= 0.0)) throw Error(ErrorCode::InvalidArgument, "alpha must be non-negative");
  return s.lambda_max / (alpha + s.lambda_max) * std::hypot(alpha, s.mu_min) / s.mu_min;
}

double rho_plhss_w(double alpha, double xi_max_mag) {
  require_positive_alpha(alpha);
  return std::hypot(alpha * xi_max_mag, 1.0) / (alpha + 1.0);
}

double rho_plhss_t(double alpha, const RealVector& xi) {
  require_positive_alpha(alpha);
  double worst = 0.0;
  for (Index i = 0; i < xi.size(); ++i) {
    const double denom = std::abs(alpha + xi(i));
    if (denom <= kPoleGuard) return kInf;
    worst = std::max(worst, std::abs(xi(i)) / denom);
  }
  return std::hypot(1.0, alpha) * worst;
}

double theta(const SpectralSummary& s) {
  if (!s.xi_max_minus || !s.xi_max_plus) {
    throw Error(ErrorCode::HypothesisViolated, "theta needs eigenvalues of T^{-1}W of both signs");
  }
  return 1.0 / *s.xi_max_minus + 1.0 / *s.xi_max_plus;
}

double predicted_rate(double alpha, const SpectralSummary& s, Scheme scheme) {
  switch (scheme) {
    case Scheme::LHSS:
    case Scheme::PLHSS_V: return sigma_bound(alpha, s);
    case Scheme::PLHSS_W: return rho_plhss_w(alpha, s.xi_max_mag);
    case Scheme::PLHSS_T: return rho_plhss_t(alpha, xi_for_rate(s));
  }
  return kInf;
}

OptimalAlpha optimal_alpha(const SpectralSummary& s, Scheme scheme) {
  OptimalAlpha out;
  switch (scheme) {
    case Scheme::LHSS:
    case Scheme::PLHSS_V:
      out.alpha = s.mu_min * s.mu_min / s.lambda_max;
      out.usable_alpha = out.alpha;
      out.predicted = s.lambda_max / std::hypot(s.lambda_max, s.mu_min);
      break;
    case Scheme::PLHSS_W: {
      const double inv = 1.0 / (s.xi_max_mag * s.xi_max_mag);
      out.alpha = inv;
      out.usable_alpha = inv;
      out.predicted = 1.0 / std::sqrt(inv + 1.0);
      break;
    }
    case Scheme::PLHSS_T: {
      const auto [minus, plus] = xi_pair_for_t_scheme(s);
      const double th = 1.0 / minus + 1.0 / plus;
      if (th >= 0.0) {
        out.infinite = true;
        out.alpha = kInf;
        out.usable_alpha = kAlphaCap;
        out.note = "Theta >= 0: optimum at alpha = infinity, alpha_cap = 1e6 substituted";
      } else {
        out.alpha = std::max(1.0 / plus, -2.0 / th);
        out.usable_alpha = out.alpha;
      }
      out.predicted = rho_plhss_t(out.usable_alpha, xi_for_rate(s));
      break;
    }
  }
  return out;
}

ConvergenceDomain convergence_domain(const SpectralSummary& s, Scheme scheme) {
  ConvergenceDomain d;
  switch (scheme) {
    case Scheme::LHSS:
    case Scheme::PLHSS_V: {
      d.kind = scheme == Scheme::LHSS ? DomainKind::D_I : DomainKind::D_V;
      const double lam = s.lambda_max, mu = s.mu_min;
      if (lam > mu) d.upper = 2.0 * lam * mu * mu / (lam * lam - mu * mu);
      break;
    }
    case Scheme::PLHSS_W: {
      d.kind = DomainKind::D_W;
      const double xi = s.xi_max_mag;
      if (xi > 1.0) d.upper = 2.0 / (xi * xi - 1.0);
      break;
    }
    case Scheme::PLHSS_T: {
      d.kind = DomainKind::D_T;
      const auto [minus, plus] = xi_pair_for_t_scheme(s);
      d.lower = -2.0 * minus / (1.0 - minus * minus);
      if (plus > 1.0) {
        if (!(minus * plus > -1.0)) {
          throw Error(ErrorCode::EmptyDomain, "V=T domain is empty: condition xi_max_minus*xi_max_plus > -1 fails (" +
                                                  std::to_string(minus * plus) + ")");
        }
        d.upper = 2.0 * plus / (plus * plus - 1.0);
        if (!(d.lower < d.upper)) throw Error(ErrorCode::EmptyDomain, "V=T domain is empty: lower >= upper");
      }
      break;
    }
  }
  return d;
}

double exact_rho(const ComplexSymmetricSystem& sys, const IterationConfig& cfg, std::size_t cap) {
  return spectral_radius(iteration_matrix(sys, cfg, cap), cap);
}

}  // namespace lhss
