#include "lhss/spectral/summary.hpp"

#include <cmath>
#include <limits>

#include "lhss/numkit/dense_eigen.hpp"
#include "lhss/numkit/error.hpp"
#include "lhss/numkit/lanczos.hpp"

namespace lhss {

std::string_view to_string(SummaryMode m) noexcept {
  switch (m) {
    case SummaryMode::Unpreconditioned: return "unpreconditioned";
    case SummaryMode::VGeneral: return "V_general";
    case SummaryMode::VIsW: return "V_is_W";
    case SummaryMode::VIsT: return "V_is_T";
  }
  return "?";
}

void fill_xi_extremes(SpectralSummary& s, const RealVector& xi) {
  s.xi_max_plus.reset();
  s.xi_max_minus.reset();
  s.xi_max_mag = 0.0;
  for (Index i = 0; i < xi.size(); ++i) {
    const double v = xi(i);
    if (v > 0 && (!s.xi_max_plus || v > *s.xi_max_plus)) s.xi_max_plus = v;
    if (v < 0 && (!s.xi_max_minus || v < *s.xi_max_minus)) s.xi_max_minus = v;
    s.xi_max_mag = std::max(s.xi_max_mag, std::abs(v));
  }
}

namespace {

// Columns F·e_j of the Cholesky half factor, V = F·Fᵀ.
RealMatrix dense_half_factor(const SpdFactorization& f) {
  const Index n = f.n();
  RealMatrix out(n, n);
  for (Index j = 0; j < n; ++j) out.col(j) = f.half_apply(RealVector(RealVector::Unit(n, j)));
  return out;
}

// F⁻¹·M·F⁻ᵀ, symmetrized.
RealMatrix congruence_inverse(const SpdFactorization& f, const RealMatrix& m) {
  RealMatrix left = f.half_solve(m);                               // F⁻¹M
  RealMatrix both = f.half_solve(RealMatrix(left.transpose()));    // F⁻¹(F⁻¹M)ᵀ = F⁻¹MF⁻ᵀ
  return 0.5 * (both + both.transpose());
}

void fill_lambda_mu(SpectralSummary& s, const RealVector& lambda, const RealVector& mu) {
  s.lambda_min = lambda.minCoeff();
  s.lambda_max = lambda.maxCoeff();
  s.mu_min = mu.cwiseAbs().minCoeff();
  s.mu_1 = std::min(0.0, mu.minCoeff());
}

SpectralSummary dense_summary(const ComplexSymmetricSystem& sys, SummaryMode mode,
                              const std::optional<RealSymMatrix>& weight, std::size_t cap) {
  SpectralSummary s;
  s.mode = mode;
  const RealMatrix w = sys.real_part().to_dense();
  const RealMatrix t = sys.imag_part().to_dense();
  s.real_part_eigenvalues = dense_sym_eigenvalues(w, cap);
  s.imag_part_eigenvalues = dense_sym_eigenvalues(t, cap);

  // ξ = eig(T⁻¹W) = eig(Fᵀ T⁻¹ F) with W = F·Fᵀ, a symmetric problem.
  const SpdFactorization& wf = sys.real_factor();
  const RealMatrix f = dense_half_factor(wf);
  const RealMatrix tinv_f = sys.imag_factor().solve(f);
  RealMatrix xi_mat = f.transpose() * tinv_f;
  xi_mat = 0.5 * (xi_mat + xi_mat.transpose());
  s.xi_list = dense_sym_eigenvalues(xi_mat, cap);
  fill_xi_extremes(s, s.xi_list);

  switch (mode) {
    case SummaryMode::Unpreconditioned:
    case SummaryMode::VIsT:
      fill_lambda_mu(s, s.real_part_eigenvalues, s.imag_part_eigenvalues);
      break;
    case SummaryMode::VGeneral: {
      const auto vf = SpdFactorization::factorize(*weight);
      fill_lambda_mu(s, dense_sym_eigenvalues(congruence_inverse(vf, w), cap),
                     dense_sym_eigenvalues(congruence_inverse(vf, t), cap));
      break;
    }
    case SummaryMode::VIsW:
      fill_lambda_mu(s, RealVector::Ones(sys.n()), dense_sym_eigenvalues(congruence_inverse(wf, t), cap));
      break;
  }
  return s;
}

SpectralSummary estimated_summary(const ComplexSymmetricSystem& sys, SummaryMode mode,
                                  const std::optional<RealSymMatrix>& weight, const SummaryOptions& o) {
  SpectralSummary s;
  s.mode = mode;
  s.estimated = true;
  const Index n = sys.n();
  const double tol = o.estimation_tol;
  const Index steps = o.estimation_max_steps;
  const RealSymMatrix& w = sys.real_part();
  const RealSymMatrix& t = sys.imag_part();
  const SpdFactorization& wf = sys.real_factor();
  const SymIndefFactorization& tf = sys.imag_factor();

  // ξ extremes from the symmetric operator Fᵀ T⁻¹ F.
  const auto xi = lanczos_extremes(
      [&](const RealVector& x) { return wf.half_apply_transpose(tf.solve(wf.half_apply(x))); }, n, tol, steps);
  RealVector xi_ends(2);
  xi_ends << xi.smallest, xi.largest;
  fill_xi_extremes(s, xi_ends);

  // SPD operator: the largest eigenvalue directly, the smallest as the
  // reciprocal of the inverse's largest.
  const auto spd_range = [&](const SymmetricOperator& op, const SymmetricOperator& inv, double& lo, double& hi) {
    hi = lanczos_extremes(op, n, tol, steps, LanczosEnds::Largest).largest;
    lo = 1.0 / lanczos_extremes(inv, n, tol, steps, LanczosEnds::Largest).largest;
  };
  // Indefinite operator: the smallest magnitude from both ends of the inverse.
  // The most negative eigenvalue sits at a clustered end and is left as NaN.
  const auto indefinite_ends = [&](const SymmetricOperator&, const SymmetricOperator& inv, double& smallest_mag,
                                   double& most_negative) {
    const auto inverse = lanczos_extremes(inv, n, tol, steps, LanczosEnds::Both);
    smallest_mag = 1.0 / std::max(std::abs(inverse.smallest), std::abs(inverse.largest));
    most_negative = std::numeric_limits<double>::quiet_NaN();
  };

  switch (mode) {
    case SummaryMode::Unpreconditioned:
    case SummaryMode::VIsT:
      spd_range([&](const RealVector& x) { return w.apply(x); }, [&](const RealVector& x) { return wf.solve(x); },
                s.lambda_min, s.lambda_max);
      indefinite_ends([&](const RealVector& x) { return t.apply(x); }, [&](const RealVector& x) { return tf.solve(x); },
                      s.mu_min, s.mu_1);
      break;
    case SummaryMode::VGeneral: {
      const auto vf = SpdFactorization::factorize(*weight);
      // V⁻¹W ~ F_V⁻¹ W F_V⁻ᵀ, inverse F_Vᵀ W⁻¹ F_V; same pattern for T.
      spd_range([&](const RealVector& x) { return vf.half_solve(w.apply(vf.half_solve_transpose(x))); },
                [&](const RealVector& x) { return vf.half_apply_transpose(wf.solve(vf.half_apply(x))); },
                s.lambda_min, s.lambda_max);
      indefinite_ends([&](const RealVector& x) { return vf.half_solve(t.apply(vf.half_solve_transpose(x))); },
                      [&](const RealVector& x) { return vf.half_apply_transpose(tf.solve(vf.half_apply(x))); },
                      s.mu_min, s.mu_1);
      break;
    }
    case SummaryMode::VIsW: {
      s.lambda_min = s.lambda_max = 1.0;
      indefinite_ends([&](const RealVector& x) { return wf.half_solve(t.apply(wf.half_solve_transpose(x))); },
                      [&](const RealVector& x) { return wf.half_apply_transpose(tf.solve(wf.half_apply(x))); },
                      s.mu_min, s.mu_1);
      break;
    }
  }
  return s;
}

}  // namespace

SpectralSummary summarize(const ComplexSymmetricSystem& sys, SummaryMode mode,
                          const std::optional<RealSymMatrix>& weight, const SummaryOptions& opts) {
  if (mode == SummaryMode::VGeneral) {
    if (!weight) throw Error(ErrorCode::InvalidArgument, "V_general summary needs a weight matrix V");
    require_same_dimension(weight->n(), sys.n(), "weight matrix V");
  }
  sys.validate();
  if (static_cast<std::size_t>(sys.n()) <= opts.dense_cap) return dense_summary(sys, mode, weight, opts.dense_cap);
  if (!opts.allow_estimation) require_dense_cap(sys.n(), opts.dense_cap);
  return estimated_summary(sys, mode, weight, opts);
}

}  // namespace lhss
