#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "lhss/splitting/system.hpp"

namespace lhss {

enum class ProblemKind { HelmholtzLike, Prescribed, Random, Loaded };
std::string_view to_string(ProblemKind k) noexcept;

struct GenerationParams {
  ProblemKind kind = ProblemKind::Random;
  Index n = 0;
  std::uint64_t seed = 0;
  double shift = 0.0;  // Helmholtz-like: the effective shift s + ω²
  double omega = 0.0;
  std::string detail;
};

/// Spectra known at construction time, ascending.
struct KnownSpectra {
  RealVector real_part;
  RealVector imag_part;
  std::optional<RealVector> xi;  // eigenvalues of T⁻¹W when exactly known
};

struct GeneratedProblem {
  ComplexSymmetricSystem system;
  GenerationParams params;
  std::optional<KnownSpectra> known_spectra;
  std::optional<ComplexVector> exact_solution;
  std::string description;
};

// ---------------------------------------------------------------- Helmholtz-like

enum class GridDim { One, Two };

struct HelmholtzOptions {
  GridDim dim = GridDim::One;
  double mass = 1.0;      // c in W = damping·L + c·M
  double shift = 0.0;     // s in T = L − (s + ω²)·M
  double omega = 0.0;
  double damping = 1.0;   // stiffness weight in W
  /// Mesh width; defaults to 1/(m+1) for m points per direction.
  std::optional<double> h;
  std::uint64_t seed = 0;  // recorded only, the construction is deterministic
};

/// Dirichlet Laplacian L (tridiagonal or 5-point, scaled by 1/h²) with
/// lumped mass M = h^d·I:
///   W = damping·L + mass·M,   T = L − (shift + ω²)·M,   b = (W + iT)·x_true
/// with x_true = (1+i)/√n in every entry. Sparse storage.
/// Throws NotIndefinite (with the admissible interval) when T would be
/// semidefinite or singular, InvalidArgument for n < 3 or a 2D n that is not
/// a perfect square.
GeneratedProblem generate_helmholtz_like(Index n, const HelmholtzOptions& opts = {});

/// Eigenvalues of the pencil (L, M) in ascending order, closed form.
RealVector helmholtz_pencil_eigenvalues(Index n, GridDim dim, std::optional<double> h = std::nullopt);

// ---------------------------------------------------------------- prescribed spectra

enum class Coupling {
  Diagonal,        // W = diag(λ), T = diag(μ)
  Commuting,       // one shared random orthogonal basis
  RandomRotation,  // independent random orthogonal bases
};

/// Throws SpecViolation for a non-positive λ, a zero μ, μ without both signs,
/// wrong lengths, or entries closer than 1e−4 within λ or within μ.
GeneratedProblem generate_prescribed(const RealVector& lambda, const RealVector& mu, Coupling coupling,
                                     std::uint64_t seed);

/// Random spectra (λ ∈ [0.5, 5], |μ| ∈ [0.3, 4] with alternating signs) in
/// independent random bases.
GeneratedProblem generate_random(Index n, std::uint64_t seed);

/// Haar-distributed orthogonal matrix from the QR of a Gaussian matrix.
RealMatrix random_orthogonal(Index n, std::uint64_t seed);

// ---------------------------------------------------------------- files

/// Reads W, T and optionally b (Matrix Market). Without b the right-hand side
/// is A·(1,…,1)ᵀ/√n. Hypothesis checks are recorded in the description.
GeneratedProblem load_problem(const std::filesystem::path& w_path, const std::filesystem::path& t_path,
                              const std::optional<std::filesystem::path>& b_path = std::nullopt);

/// Writes W.mtx, T.mtx and b.mtx into dir (created if needed).
void write_problem(const GeneratedProblem& problem, const std::filesystem::path& dir);

}  // namespace lhss
