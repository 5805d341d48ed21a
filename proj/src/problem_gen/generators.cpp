#include "lhss/problem_gen/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/QR>
#include <fmt/format.h>
#include <fmt/ranges.h>

#include "lhss/numkit/error.hpp"
#include "lhss/numkit/factorization.hpp"
#include "lhss/numkit/matrix_market.hpp"

namespace lhss {

std::string_view to_string(ProblemKind k) noexcept {
  switch (k) {
    case ProblemKind::HelmholtzLike: return "helmholtz-like";
    case ProblemKind::Prescribed: return "prescribed";
    case ProblemKind::Random: return "random";
    case ProblemKind::Loaded: return "loaded";
  }
  return "?";
}

namespace {

ComplexVector uniform_solution(Index n) {
  return ComplexVector::Constant(n, Complex(1.0, 1.0) / std::sqrt(static_cast<double>(n)));
}

ComplexVector product(const RealSymMatrix& w, const RealSymMatrix& t, const ComplexVector& x) {
  return w.apply(x) + Complex(0.0, 1.0) * t.apply(x);
}

Index grid_side(Index n, GridDim dim) {
  if (dim == GridDim::One) return n;
  const auto m = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(n))));
  if (m * m != n) throw Error(ErrorCode::InvalidArgument, fmt::format("2D grid needs a square n, got {}", n));
  return m;
}

double min_gap(RealVector v) {
  std::sort(v.begin(), v.end());
  double gap = std::numeric_limits<double>::infinity();
  for (Index i = 1; i < v.size(); ++i) gap = std::min(gap, v(i) - v(i - 1));
  return gap;
}

RealVector sorted(RealVector v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

RealVector helmholtz_pencil_eigenvalues(Index n, GridDim dim, std::optional<double> h) {
  const Index m = grid_side(n, dim);
  const double width = h.value_or(1.0 / static_cast<double>(m + 1));
  RealVector line(m);
  for (Index k = 1; k <= m; ++k) {
    line(k - 1) = (2.0 - 2.0 * std::cos(std::numbers::pi * static_cast<double>(k) / static_cast<double>(m + 1))) /
                  (width * width);
  }
  if (dim == GridDim::One) return line / width;
  RealVector all(n);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < m; ++j) all(i * m + j) = (line(i) + line(j)) / (width * width);
  return sorted(all);
}

GeneratedProblem generate_helmholtz_like(Index n, const HelmholtzOptions& opts) {
  if (n < 3) throw Error(ErrorCode::InvalidArgument, "Helmholtz-like problems need n >= 3");
  if (!(opts.mass > 0.0) || !(opts.damping > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "mass and damping coefficients must be positive");
  }
  const Index m = grid_side(n, opts.dim);
  const double h = opts.h.value_or(1.0 / static_cast<double>(m + 1));
  if (!(h > 0.0)) throw Error(ErrorCode::InvalidArgument, "mesh width must be positive");
  const double mass_scale = opts.dim == GridDim::One ? h : h * h;
  const double s_eff = opts.shift + opts.omega * opts.omega;

  const RealVector pencil = helmholtz_pencil_eigenvalues(n, opts.dim, h);
  const double lo = pencil(0);
  const double hi = pencil(n - 1);
  const double nearest = (pencil.array() - s_eff).abs().minCoeff();
  if (!(s_eff > lo && s_eff < hi) || nearest <= 1e-10 * hi) {
    throw Error(ErrorCode::NotIndefinite,
                fmt::format("effective shift {:.17g} must lie in ({:.17g}, {:.17g}) away from pencil eigenvalues",
                            s_eff, lo, hi));
  }

  const double inv_h2 = 1.0 / (h * h);
  std::vector<Triplet> lap;
  const auto couple = [&](Index row, Index col) { lap.emplace_back(row, col, -inv_h2); };
  if (opts.dim == GridDim::One) {
    for (Index i = 0; i < n; ++i) {
      lap.emplace_back(i, i, 2.0 * inv_h2);
      if (i + 1 < n) couple(i + 1, i);
    }
  } else {
    for (Index i = 0; i < m; ++i) {
      for (Index j = 0; j < m; ++j) {
        const Index k = i * m + j;
        lap.emplace_back(k, k, 4.0 * inv_h2);
        if (j + 1 < m) couple(k + 1, k);
        if (i + 1 < m) couple(k + m, k);
      }
    }
  }
  const RealSymMatrix laplacian = RealSymMatrix::from_lower_triplets(n, lap);
  const RealSymMatrix mass = RealSymMatrix::identity(n, Layout::Sparse).scaled(mass_scale);
  RealSymMatrix w = RealSymMatrix::combine(opts.damping, laplacian, opts.mass, mass);
  RealSymMatrix t = RealSymMatrix::combine(1.0, laplacian, -s_eff, mass);

  GeneratedProblem p;
  const ComplexVector x_true = uniform_solution(n);
  const ComplexVector b = product(w, t, x_true);
  p.system = ComplexSymmetricSystem(std::move(w), std::move(t), b);
  p.exact_solution = x_true;
  p.params = {ProblemKind::HelmholtzLike, n, opts.seed, s_eff, opts.omega,
              opts.dim == GridDim::One ? "1D" : "2D"};

  KnownSpectra ks;
  ks.real_part = (mass_scale * (opts.damping * pencil.array() + opts.mass)).matrix();
  ks.imag_part = (mass_scale * (pencil.array() - s_eff)).matrix();
  ks.xi = sorted(ks.real_part.cwiseQuotient(ks.imag_part));
  ks.imag_part = sorted(ks.imag_part);
  p.known_spectra = std::move(ks);
  const Index negatives = (pencil.array() < s_eff).count();
  p.description = fmt::format(
      "Helmholtz-like {} n={} h={:g} damping={:g} mass={:g} shift={:g} omega={:g}; T has {} negative eigenvalues",
      p.params.detail, n, h, opts.damping, opts.mass, opts.shift, opts.omega, negatives);
  return p;
}

RealMatrix random_orthogonal(Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  RealMatrix g(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) g(i, j) = normal(rng);
  Eigen::HouseholderQR<RealMatrix> qr(g);
  RealMatrix q = qr.householderQ();
  const RealMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < n; ++j) {
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  return q;
}

GeneratedProblem generate_prescribed(const RealVector& lambda, const RealVector& mu, Coupling coupling,
                                     std::uint64_t seed) {
  const Index n = lambda.size();
  if (n == 0 || mu.size() != n) throw Error(ErrorCode::SpecViolation, "lambda and mu need the same positive length");
  if ((lambda.array() <= 0.0).any()) throw Error(ErrorCode::SpecViolation, "every lambda must be positive");
  if ((mu.array() == 0.0).any()) throw Error(ErrorCode::SpecViolation, "mu entries must be nonzero");
  if (!(mu.array() < 0.0).any() || !(mu.array() > 0.0).any()) {
    throw Error(ErrorCode::SpecViolation, "mu needs both signs");
  }
  if (n > 1 && (min_gap(lambda) < 1e-4 || min_gap(mu) < 1e-4)) {
    throw Error(ErrorCode::SpecViolation, "spectrum entries closer than 1e-4");
  }

  RealSymMatrix w;
  RealSymMatrix t;
  if (coupling == Coupling::Diagonal) {
    w = RealSymMatrix::diagonal(lambda);
    t = RealSymMatrix::diagonal(mu);
  } else {
    const RealMatrix q = random_orthogonal(n, seed);
    const RealMatrix q2 = coupling == Coupling::Commuting ? q : random_orthogonal(n, seed ^ 0x9E3779B97F4A7C15ULL);
    w = RealSymMatrix::from_dense_symmetrized(q * lambda.asDiagonal() * q.transpose());
    t = RealSymMatrix::from_dense_symmetrized(q2 * mu.asDiagonal() * q2.transpose());
  }

  GeneratedProblem p;
  const ComplexVector x_true = uniform_solution(n);
  const ComplexVector b = product(w, t, x_true);
  p.system = ComplexSymmetricSystem(std::move(w), std::move(t), b);
  p.exact_solution = x_true;
  static constexpr const char* kCouplingNames[] = {"diagonal", "commuting", "random-rotation"};
  p.params = {ProblemKind::Prescribed, n, seed, 0.0, 0.0, kCouplingNames[static_cast<int>(coupling)]};
  KnownSpectra ks;
  ks.real_part = sorted(lambda);
  ks.imag_part = sorted(mu);
  if (coupling != Coupling::RandomRotation) ks.xi = sorted(lambda.cwiseQuotient(mu));
  p.known_spectra = std::move(ks);
  p.description = fmt::format("prescribed spectra n={} coupling={} seed={}", n, p.params.detail, seed);
  return p;
}

GeneratedProblem generate_random(Index n, std::uint64_t seed) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "random problems need n >= 2");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> lam(0.5, 5.0);
  std::uniform_real_distribution<double> mag(0.3, 4.0);
  RealVector lambda(n);
  RealVector mu(n);
  do {
    for (Index i = 0; i < n; ++i) {
      lambda(i) = lam(rng);
      mu(i) = (i % 2 == 0 ? -1.0 : 1.0) * mag(rng);
    }
  } while (min_gap(lambda) < 1e-4 || min_gap(mu) < 1e-4);
  GeneratedProblem p = generate_prescribed(lambda, mu, Coupling::RandomRotation, seed);
  p.params.kind = ProblemKind::Random;
  p.description = fmt::format("random n={} seed={}", n, seed);
  return p;
}

GeneratedProblem load_problem(const std::filesystem::path& w_path, const std::filesystem::path& t_path,
                              const std::optional<std::filesystem::path>& b_path) {
  RealSymMatrix w = read_sym_matrix(w_path);
  RealSymMatrix t = read_sym_matrix(t_path);
  require_same_dimension(w.n(), t.n(), "W and T");
  const Index n = w.n();

  std::vector<std::string> notes;
  ComplexVector b;
  if (b_path) {
    b = read_complex_vector(*b_path);
    require_same_dimension(b.size(), n, "right-hand side");
  } else {
    b = product(w, t, ComplexVector::Ones(n) / std::sqrt(static_cast<double>(n)));
    notes.emplace_back("b defaults to A*(1,...,1)/sqrt(n)");
  }
  try {
    (void)SpdFactorization::factorize(w);
    notes.emplace_back("W positive definite");
  } catch (const Error&) {
    notes.emplace_back("W NOT positive definite: hypotheses violated");
  }
  try {
    const Inertia in = SymIndefFactorization::factorize(t).inertia();
    if (in.positive > 0 && in.negative > 0) {
      notes.emplace_back(fmt::format("T indefinite ({} positive, {} negative)", in.positive, in.negative));
    } else {
      notes.emplace_back("T definite: indefiniteness hypothesis violated");
    }
  } catch (const Error& e) {
    notes.emplace_back(fmt::format("T factorization failed: {}", e.what()));
  }

  GeneratedProblem p;
  p.system = ComplexSymmetricSystem(std::move(w), std::move(t), std::move(b));
  p.params = {ProblemKind::Loaded, n, 0, 0.0, 0.0, w_path.string()};
  p.description = fmt::format("loaded from {} and {}; {}", w_path.string(), t_path.string(), fmt::join(notes, "; "));
  return p;
}

void write_problem(const GeneratedProblem& problem, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::IoError, fmt::format("cannot create {}: {}", dir.string(), ec.message()));
  write_matrix_market(problem.system.real_part(), dir / "W.mtx");
  write_matrix_market(problem.system.imag_part(), dir / "T.mtx");
  write_matrix_market(problem.system.rhs(), dir / "b.mtx");
}

}  // namespace lhss
