#pragma once

#include <optional>
#include <string_view>

#include "lhss/splitting/system.hpp"

namespace lhss {

enum class SummaryMode { Unpreconditioned, VGeneral, VIsW, VIsT };
std::string_view to_string(SummaryMode m) noexcept;

/// Extremal spectra driving every convergence bound.
///
/// Unpreconditioned and VIsT: lambda_* describe W and mu_* describe T.
/// VGeneral: lambda_* describe V⁻¹W and mu_* describe V⁻¹T.
/// VIsW: V⁻¹W = I (lambda = 1) and mu_* describe W⁻¹T, whose eigenvalues are 1/ξ.
/// The ξ quantities are always the eigenvalues of T⁻¹W; xi_max_minus is the
/// most negative one.
struct SpectralSummary {
  SummaryMode mode = SummaryMode::Unpreconditioned;
  double lambda_max = 0.0;
  double lambda_min = 0.0;
  double mu_min = 0.0;  // smallest |μ|
  double mu_1 = 0.0;    // most negative μ (0 if none, NaN when estimated)
  RealVector xi_list;   // ascending; empty when estimated
  std::optional<double> xi_max_plus;
  std::optional<double> xi_max_minus;
  double xi_max_mag = 0.0;
  /// Full W and T spectra (dense path only).
  RealVector real_part_eigenvalues;
  RealVector imag_part_eigenvalues;
  /// True when produced by the Lanczos path.
  bool estimated = false;
};

struct SummaryOptions {
  std::size_t dense_cap = kDefaultDenseCap;
  /// Above dense_cap, estimate extremes by Lanczos instead of failing.
  bool allow_estimation = true;
  double estimation_tol = 1e-6;
  int estimation_max_steps = 500;
};

/// Throws SingularMatrix (T), NotPositiveDefinite (W or V), InvalidArgument
/// (VGeneral without weight), DimensionTooLarge (above the cap with
/// estimation disabled), EstimationFailed.
SpectralSummary summarize(const ComplexSymmetricSystem& sys, SummaryMode mode = SummaryMode::Unpreconditioned,
                          const std::optional<RealSymMatrix>& weight = std::nullopt, const SummaryOptions& opts = {});

/// Builds the ξ fields (plus, minus, magnitude) from a list of eigenvalues.
void fill_xi_extremes(SpectralSummary& s, const RealVector& xi);

}  // namespace lhss
