#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "lhss/numkit/dense_eigen.hpp"
#include "lhss/numkit/error.hpp"
#include "lhss/numkit/factorization.hpp"
#include "lhss/problem_gen/generators.hpp"
#include "lhss/problem_gen/suites.hpp"
#include "lhss/spectral/summary.hpp"

namespace lhss {
namespace {

using Eigen::VectorXd;

VectorXd vec(std::initializer_list<double> d) {
  VectorXd v(static_cast<Index>(d.size()));
  Index i = 0;
  for (double x : d) v(i++) = x;
  return v;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::InvalidArgument;
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("lhss_problem_gen_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

// ---------------------------------------------------------------- Helmholtz-like

TEST(Helmholtz, ClosedFormExample) {
  HelmholtzOptions opts;
  opts.h = 1.0;
  opts.mass = 0.5;
  opts.shift = 2.5;
  const auto p = generate_helmholtz_like(3, opts);
  const double r2 = std::sqrt(2.0);
  const VectorXd t_eigs = dense_sym_eigenvalues(p.system.imag_part().to_dense());
  EXPECT_NEAR(t_eigs(0), 2.0 - r2 - 2.5, 1e-12);
  EXPECT_NEAR(t_eigs(1), -0.5, 1e-12);
  EXPECT_NEAR(t_eigs(2), 2.0 + r2 - 2.5, 1e-12);
  EXPECT_NEAR(t_eigs(0), -1.914214, 1e-6);
  EXPECT_NEAR(t_eigs(2), 0.914214, 1e-6);
  const VectorXd w_eigs = dense_sym_eigenvalues(p.system.real_part().to_dense());
  EXPECT_NEAR(w_eigs(0), 1.085786, 1e-6);
  EXPECT_TRUE(p.system.real_part().is_sparse());
}

TEST(Helmholtz, ShiftBelowSpectrumIsRejected) {
  HelmholtzOptions opts;
  opts.h = 1.0;
  opts.shift = 0.5;  // below 2 − √2
  EXPECT_EQ(code_of([&] { (void)generate_helmholtz_like(3, opts); }), ErrorCode::NotIndefinite);
  try {
    (void)generate_helmholtz_like(3, opts);
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("0.585786"), std::string::npos) << e.what();
  }
  opts.shift = 2.0;  // exactly a pencil eigenvalue: T singular
  EXPECT_EQ(code_of([&] { (void)generate_helmholtz_like(3, opts); }), ErrorCode::NotIndefinite);
  EXPECT_EQ(code_of([&] { (void)generate_helmholtz_like(2, {}); }), ErrorCode::InvalidArgument);
}

TEST(Helmholtz, RhsMatchesExactSolution) {
  HelmholtzOptions opts;
  opts.shift = suite_shift(50, 2);
  const auto p = generate_helmholtz_like(50, opts);
  ASSERT_TRUE(p.exact_solution.has_value());
  EXPECT_LE(p.system.relative_residual(*p.exact_solution), 1e-14);
  for (Complex z : *p.exact_solution) EXPECT_NEAR(std::abs(z - Complex(1, 1) / std::sqrt(50.0)), 0.0, 1e-16);
}

TEST(Helmholtz, KnownSpectraMatchDense) {
  for (GridDim dim : {GridDim::One, GridDim::Two}) {
    HelmholtzOptions opts;
    opts.dim = dim;
    opts.damping = 0.3;
    opts.mass = 2.0;
    const Index n = dim == GridDim::One ? 30 : 36;
    const VectorXd pencil = helmholtz_pencil_eigenvalues(n, dim);
    Index k = 4;
    while (pencil(k + 1) - pencil(k) < 1e-6 * pencil(k)) ++k;  // 2D pencils repeat eigenvalues
    opts.shift = 0.5 * (pencil(k) + pencil(k + 1));
    const auto p = generate_helmholtz_like(n, opts);
    const auto& ks = *p.known_spectra;
    const VectorXd w = dense_sym_eigenvalues(p.system.real_part().to_dense());
    const VectorXd t = dense_sym_eigenvalues(p.system.imag_part().to_dense());
    EXPECT_LE((w - ks.real_part).cwiseAbs().maxCoeff(), 1e-9 * w.cwiseAbs().maxCoeff());
    EXPECT_LE((t - ks.imag_part).cwiseAbs().maxCoeff(), 1e-9 * t.cwiseAbs().maxCoeff());
    const Eigen::MatrixXd m = p.system.imag_part().to_dense().partialPivLu().solve(p.system.real_part().to_dense());
    VectorXd xi = Eigen::EigenSolver<Eigen::MatrixXd>(m, false).eigenvalues().real();
    std::sort(xi.begin(), xi.end());
    EXPECT_LE((xi - *ks.xi).cwiseAbs().maxCoeff(), 1e-9 * (1.0 + xi.cwiseAbs().maxCoeff()));
  }
}

TEST(Helmholtz, TwoDimensionalNeedsSquare) {
  HelmholtzOptions opts;
  opts.dim = GridDim::Two;
  EXPECT_EQ(code_of([&] { (void)generate_helmholtz_like(10, opts); }), ErrorCode::InvalidArgument);
}

TEST(Helmholtz, NegativeCountGrowsWithShift) {
  const Index n = 40;
  const VectorXd pencil = helmholtz_pencil_eigenvalues(n, GridDim::One);
  Index previous = 0;
  for (Index k : {1, 3, 6, 10, 15}) {
    HelmholtzOptions opts;
    opts.shift = 0.5 * (pencil(k - 1) + pencil(k));
    const auto p = generate_helmholtz_like(n, opts);
    const Inertia in = SymIndefFactorization::factorize(p.system.imag_part()).inertia();
    EXPECT_GE(in.negative, previous);
    EXPECT_EQ(in.negative, k);
    previous = in.negative;
  }
}

TEST(Helmholtz, OmegaRaisesTheShift) {
  const VectorXd pencil = helmholtz_pencil_eigenvalues(20, GridDim::One);
  HelmholtzOptions a;
  a.shift = 0.5 * (pencil(0) + pencil(1));
  HelmholtzOptions b;
  b.shift = a.shift - 4.0;
  b.omega = 2.0;
  EXPECT_TRUE(generate_helmholtz_like(20, a).system.imag_part() == generate_helmholtz_like(20, b).system.imag_part());
}

// ---------------------------------------------------------------- prescribed

TEST(Prescribed, DiagonalIsTheReferenceSystem) {
  const auto p = generate_prescribed(vec({0.5, 0.8}), vec({1.0, -2.0}), Coupling::Diagonal, 0);
  EXPECT_EQ(p.system.real_part().to_dense(), Eigen::Vector2d(0.5, 0.8).asDiagonal().toDenseMatrix());
  EXPECT_EQ(p.system.imag_part().to_dense(), Eigen::Vector2d(1.0, -2.0).asDiagonal().toDenseMatrix());
  EXPECT_NEAR((*p.known_spectra->xi)(0), -0.4, 1e-15);
  EXPECT_NEAR((*p.known_spectra->xi)(1), 0.5, 1e-15);
}

TEST(Prescribed, CommutingXiMatchesDense) {
  const VectorXd lambda = vec({0.6, 1.1, 2.0, 3.3, 4.1, 0.9});
  const VectorXd mu = vec({-1.5, 0.7, 2.2, -0.4, 3.0, -2.6});
  const auto p = generate_prescribed(lambda, mu, Coupling::Commuting, 7);
  const Eigen::MatrixXd m = p.system.imag_part().to_dense().partialPivLu().solve(p.system.real_part().to_dense());
  VectorXd xi = Eigen::EigenSolver<Eigen::MatrixXd>(m, false).eigenvalues().real();
  std::sort(xi.begin(), xi.end());
  EXPECT_LE((xi - *p.known_spectra->xi).cwiseAbs().maxCoeff(), 1e-10);
  const auto s = summarize(p.system);
  EXPECT_NEAR(s.lambda_max, 4.1, 1e-9);
  EXPECT_NEAR(s.mu_min, 0.4, 1e-9);
  EXPECT_NEAR(*s.xi_max_plus, p.known_spectra->xi->maxCoeff(), 1e-9);
  EXPECT_NEAR(*s.xi_max_minus, p.known_spectra->xi->minCoeff(), 1e-9);
}

TEST(Prescribed, RandomRotationHypotheses) {
  VectorXd lambda(8);
  VectorXd mu(8);
  for (Index i = 0; i < 8; ++i) {
    lambda(i) = 0.5 + 0.4 * static_cast<double>(i);
    mu(i) = (i % 2 == 0 ? -1.0 : 1.0) * (0.3 + 0.35 * static_cast<double>(i));
  }
  const auto p = generate_prescribed(lambda, mu, Coupling::RandomRotation, 42);
  EXPECT_NO_THROW((void)SpdFactorization::factorize(p.system.real_part()));
  const Inertia in = SymIndefFactorization::factorize(p.system.imag_part()).inertia();
  EXPECT_GT(in.positive, 0);
  EXPECT_GT(in.negative, 0);
  EXPECT_FALSE(p.known_spectra->xi.has_value());
  const VectorXd w = dense_sym_eigenvalues(p.system.real_part().to_dense());
  EXPECT_LE((w - p.known_spectra->real_part).cwiseAbs().maxCoeff(), 1e-9);
  const VectorXd t = dense_sym_eigenvalues(p.system.imag_part().to_dense());
  EXPECT_LE((t - p.known_spectra->imag_part).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(Prescribed, Violations) {
  const auto bad = [](VectorXd l, VectorXd m) {
    return code_of([&] { (void)generate_prescribed(l, m, Coupling::Commuting, 1); });
  };
  EXPECT_EQ(bad(vec({0.0, 1.0}), vec({1.0, -1.0})), ErrorCode::SpecViolation);
  EXPECT_EQ(bad(vec({0.5, 1.0}), vec({0.0, -1.0})), ErrorCode::SpecViolation);
  EXPECT_EQ(bad(vec({0.5, 1.0}), vec({1.0, 2.0})), ErrorCode::SpecViolation);
  EXPECT_EQ(bad(vec({0.5, 0.50001}), vec({1.0, -1.0})), ErrorCode::SpecViolation);
  EXPECT_EQ(bad(vec({0.5, 1.0, 2.0}), vec({1.0, -1.0})), ErrorCode::SpecViolation);
}

TEST(Prescribed, Deterministic) {
  const auto a = generate_random(12, 99);
  const auto b = generate_random(12, 99);
  EXPECT_TRUE(a.system.real_part() == b.system.real_part());
  EXPECT_TRUE(a.system.imag_part() == b.system.imag_part());
  EXPECT_EQ(a.system.rhs(), b.system.rhs());
  const auto c = generate_random(12, 100);
  EXPECT_FALSE(a.system.real_part() == c.system.real_part());
}

TEST(Prescribed, OrthogonalIsOrthogonal) {
  const Eigen::MatrixXd q = random_orthogonal(10, 5);
  EXPECT_LE((q.transpose() * q - Eigen::MatrixXd::Identity(10, 10)).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(Prescribed, RandomProblemsSatisfyHypotheses) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto p = generate_random(6 + static_cast<Index>(seed), seed);
    EXPECT_NO_THROW((void)SpdFactorization::factorize(p.system.real_part()));
    const Inertia in = SymIndefFactorization::factorize(p.system.imag_part()).inertia();
    EXPECT_GT(in.positive, 0);
    EXPECT_GT(in.negative, 0);
  }
}

// ---------------------------------------------------------------- files

TEST(Files, RoundTrip) {
  const auto dir = scratch("roundtrip");
  HelmholtzOptions opts;
  opts.shift = suite_shift(20, 3);
  const auto p = generate_helmholtz_like(20, opts);
  write_problem(p, dir);
  const auto q = load_problem(dir / "W.mtx", dir / "T.mtx", dir / "b.mtx");
  EXPECT_TRUE(p.system.real_part() == q.system.real_part());
  EXPECT_TRUE(p.system.imag_part() == q.system.imag_part());
  EXPECT_EQ(p.system.rhs(), q.system.rhs());
  EXPECT_NE(q.description.find("W positive definite"), std::string::npos);
  EXPECT_NE(q.description.find("T indefinite"), std::string::npos);
}

TEST(Files, DefaultRhs) {
  const auto dir = scratch("default_rhs");
  const auto p = named_problem("reference");
  write_problem(p, dir);
  const auto q = load_problem(dir / "W.mtx", dir / "T.mtx");
  const ComplexVector expected = p.system.apply(ComplexVector::Ones(2) / std::sqrt(2.0));
  EXPECT_LE((q.system.rhs() - expected).norm(), 1e-15);
  EXPECT_NE(q.description.find("b defaults"), std::string::npos);
}

TEST(Files, MismatchedDimensions) {
  const auto dir = scratch("mismatch");
  write_problem(named_problem("reference"), dir / "a");
  write_problem(generate_random(3, 1), dir / "b");
  EXPECT_EQ(code_of([&] { (void)load_problem(dir / "a" / "W.mtx", dir / "b" / "T.mtx"); }),
            ErrorCode::DimensionMismatch);
}

TEST(Files, DefiniteImagPartIsFlaggedNotRejected) {
  const auto dir = scratch("definite");
  write_problem(named_problem("reference"), dir);
  const auto q = load_problem(dir / "W.mtx", dir / "W.mtx");
  EXPECT_NE(q.description.find("indefiniteness hypothesis violated"), std::string::npos);
}

// ---------------------------------------------------------------- named problems

TEST(Suites, NamedProblems) {
  for (const auto& name : problem_names()) EXPECT_NO_THROW((void)named_problem(name)) << name;
  EXPECT_THROW((void)named_problem("saw"), Error);
  const auto ref = named_problem("reference-lhss");
  EXPECT_EQ(ref.system.real_part().diagonal_entries(), vec({1.0, 2.0}));
  EXPECT_EQ(ref.system.imag_part().diagonal_entries(), vec({1.0, -1.0}));
}

TEST(Suites, HelmholtzSuiteIndefinitenessIntensifies) {
  const auto suite = helmholtz_suite();
  ASSERT_EQ(suite.size(), 3u);
  Index expected[] = {1, 3, 8};
  for (std::size_t i = 0; i < suite.size(); ++i) {
    EXPECT_EQ(suite[i].system.n(), kSuiteDimension);
    const Inertia in = SymIndefFactorization::factorize(suite[i].system.imag_part()).inertia();
    EXPECT_EQ(in.negative, expected[i]);
  }
}

}  // namespace
}  // namespace lhss
