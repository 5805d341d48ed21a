#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lhss/krylov/system_solvers.hpp"
#include "lhss/problem_gen/generators.hpp"
#include "lhss/spectral/summary.hpp"

namespace lhss::bench {

/// Where the system comes from. Exactly one source is used, in this order:
/// files, then a named problem ("random:N" draws a random one of size N).
struct ProblemSource {
  std::string name = "reference";
  std::optional<std::filesystem::path> w_file;
  std::optional<std::filesystem::path> t_file;
  std::optional<std::filesystem::path> b_file;
  /// Helmholtz-like generation when set (name is then ignored).
  std::optional<HelmholtzOptions> helmholtz;
  Index helmholtz_n = 0;
};

struct AlphaPolicy {
  enum class Kind { Fixed, Optimal, Sweep };
  Kind kind = Kind::Optimal;
  double value = 1.0;  // Fixed
  // Sweep: count log-spaced points over [lo, hi]; absent bounds mean the
  // default grid of 41 points over four decades centred at α*.
  std::optional<double> lo;
  std::optional<double> hi;
  int count = 41;

  static AlphaPolicy parse(const std::string& text);  // "1.5", "opt", "sweep", "sweep:lo:hi:count"
  std::string describe() const;
};

/// Weight V for PLHSS_V and for a weighted PMHSS.
enum class WeightChoice { None, Identity, RealPart, RealDiagonal };

struct RunSpec {
  enum class Kind { Stationary, Krylov };
  Kind kind = Kind::Stationary;
  Method method = Method::PLHSS_T;
  KrylovSolver solver = KrylovSolver::GMRES;
  PreconditionerKind preconditioner = PreconditionerKind::Identity;
  AlphaPolicy alpha;
  WeightChoice weight = WeightChoice::None;
  std::optional<int> restart;

  std::string label() const;
};

struct ExperimentSpec {
  ProblemSource problem;
  std::vector<RunSpec> runs;
  double tol = 1e-8;
  int max_iter = 500;
  std::uint64_t seed = 0;
  std::filesystem::path out = ".";
  bool start_from_exact = false;  // x⁽⁰⁾ = x_true when the problem knows it
  unsigned workers = 0;           // 0: hardware concurrency

  /// Throws Error(InvalidArgument) describing the first violation.
  void validate() const;
};

/// Throws Error(ParseError / InvalidArgument) on malformed documents.
ExperimentSpec parse_spec(const nlohmann::json& doc);
ExperimentSpec load_spec(const std::filesystem::path& path);
nlohmann::json to_json(const ExperimentSpec& spec);

GeneratedProblem build_problem(const ExperimentSpec& spec);
std::optional<RealSymMatrix> weight_matrix(WeightChoice choice, const ComplexSymmetricSystem& sys);

/// Summary mode matching a lopsided method's analysis.
SummaryMode summary_mode_for(Method m);

/// Lazily computed spectral summaries of one problem, shared by the runs of
/// an experiment. Thread-safe.
class ProblemAnalysis {
 public:
  explicit ProblemAnalysis(ComplexSymmetricSystem sys);
  const ComplexSymmetricSystem& system() const noexcept { return sys_; }
  /// Throws whatever summarize() throws.
  const SpectralSummary& summary(SummaryMode mode, WeightChoice weight = WeightChoice::None) const;

 private:
  struct Cache;
  ComplexSymmetricSystem sys_;
  std::shared_ptr<Cache> cache_;
};

/// α* (or the documented default) for a run. `note` receives a remark when
/// the optimum is infinite or a hypothesis fails.
double optimal_alpha_for(const RunSpec& run, const ProblemAnalysis& analysis, std::string* note = nullptr);

/// Predicted contraction for a stationary lopsided run; nullopt for baselines
/// and Krylov runs, or when the analysis does not apply.
std::optional<double> predicted_bound(const RunSpec& run, const ProblemAnalysis& analysis, double alpha);

/// The points of a sweep policy, ascending.
std::vector<double> sweep_grid(const AlphaPolicy& policy, double alpha_star);

}  // namespace lhss::bench
