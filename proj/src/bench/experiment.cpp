#include "lhss/bench/experiment.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <mutex>

#include <fmt/format.h>

#include "lhss/numkit/error.hpp"
#include "lhss/problem_gen/suites.hpp"
#include "lhss/spectral/bounds.hpp"

namespace lhss::bench {

using nlohmann::json;

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

double parse_number(const std::string& text, const char* what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::InvalidArgument, fmt::format("{}: '{}' is not a number", what, text));
  }
}

WeightChoice weight_from_string(const std::string& text) {
  const std::string t = lower(text);
  if (t == "none") return WeightChoice::None;
  if (t == "identity" || t == "i") return WeightChoice::Identity;
  if (t == "w" || t == "real") return WeightChoice::RealPart;
  if (t == "diag(w)" || t == "diag") return WeightChoice::RealDiagonal;
  throw Error(ErrorCode::InvalidArgument, fmt::format("unknown weight '{}'", text));
}

std::string_view weight_name(WeightChoice w) {
  switch (w) {
    case WeightChoice::None: return "none";
    case WeightChoice::Identity: return "identity";
    case WeightChoice::RealPart: return "W";
    case WeightChoice::RealDiagonal: return "diag(W)";
  }
  return "?";
}

const char* kDimNames[] = {"1D", "2D"};

}  // namespace

// ---------------------------------------------------------------- alpha policy

AlphaPolicy AlphaPolicy::parse(const std::string& text) {
  AlphaPolicy p;
  const std::string t = lower(text);
  if (t == "opt" || t == "optimal") {
    p.kind = Kind::Optimal;
    return p;
  }
  if (t.rfind("sweep", 0) == 0) {
    p.kind = Kind::Sweep;
    if (t == "sweep") return p;
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
      const std::size_t colon = t.find(':', start);
      parts.push_back(t.substr(start, colon - start));
      if (colon == std::string::npos) break;
      start = colon + 1;
    }
    if (parts.size() != 4 || parts[0] != "sweep") {
      throw Error(ErrorCode::InvalidArgument, fmt::format("sweep policy must be sweep:lo:hi:count, got '{}'", text));
    }
    p.lo = parse_number(parts[1], "sweep lower bound");
    p.hi = parse_number(parts[2], "sweep upper bound");
    p.count = static_cast<int>(parse_number(parts[3], "sweep count"));
    return p;
  }
  p.kind = Kind::Fixed;
  p.value = parse_number(text, "alpha");
  return p;
}

std::string AlphaPolicy::describe() const {
  switch (kind) {
    case Kind::Fixed: return fmt::format("{:.17g}", value);
    case Kind::Optimal: return "opt";
    case Kind::Sweep:
      if (lo && hi) return fmt::format("sweep:{:.17g}:{:.17g}:{}", *lo, *hi, count);
      return "sweep";
  }
  return "?";
}

std::vector<double> sweep_grid(const AlphaPolicy& policy, double alpha_star) {
  double lo = 0.0;
  double hi = 0.0;
  if (policy.lo && policy.hi) {
    lo = *policy.lo;
    hi = *policy.hi;
  } else {
    lo = alpha_star * 1e-2;
    hi = alpha_star * 1e2;
  }
  const int count = policy.count;
  if (!(lo > 0.0) || !(hi >= lo) || !std::isfinite(hi) || count < 1) {
    throw Error(ErrorCode::InvalidArgument, "sweep grid must be finite, positive and sorted");
  }
  std::vector<double> grid(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double t = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
    grid[static_cast<std::size_t>(i)] = std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo)));
  }
  return grid;
}

// ---------------------------------------------------------------- runs

std::string RunSpec::label() const {
  if (kind == Kind::Stationary) {
    std::string s(to_string(method));
    if (weight != WeightChoice::None) s += fmt::format("(V={})", weight_name(weight));
    return s;
  }
  return fmt::format("{}+{}", to_string(solver), to_string(preconditioner));
}

void ExperimentSpec::validate() const {
  if (runs.empty()) throw Error(ErrorCode::InvalidArgument, "the spec needs at least one run");
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tol must be positive");
  if (max_iter < 0) throw Error(ErrorCode::InvalidArgument, "max_iter must be non-negative");
  if (problem.w_file.has_value() != problem.t_file.has_value()) {
    throw Error(ErrorCode::InvalidArgument, "W and T files must be given together");
  }
  for (const auto& r : runs) {
    const auto& a = r.alpha;
    if (a.kind == AlphaPolicy::Kind::Fixed && !(a.value > 0.0 && std::isfinite(a.value))) {
      throw Error(ErrorCode::InvalidArgument, fmt::format("{}: alpha must be positive and finite", r.label()));
    }
    if (a.kind == AlphaPolicy::Kind::Sweep) {
      if (a.lo.has_value() != a.hi.has_value()) {
        throw Error(ErrorCode::InvalidArgument, "sweep needs both bounds or neither");
      }
      if (a.count < 1) throw Error(ErrorCode::InvalidArgument, "sweep count must be at least 1");
      if (a.lo && !(*a.lo > 0.0 && *a.hi >= *a.lo && std::isfinite(*a.hi))) {
        throw Error(ErrorCode::InvalidArgument, "sweep grid must be finite, positive and sorted");
      }
    }
    if (r.kind == RunSpec::Kind::Stationary && r.method == Method::PLHSS_V && r.weight == WeightChoice::None) {
      throw Error(ErrorCode::InvalidArgument, "PLHSS_V needs a weight (identity, W or diag(W))");
    }
    if (r.restart && (*r.restart < 1 || r.kind != RunSpec::Kind::Krylov || r.solver != KrylovSolver::GMRES)) {
      throw Error(ErrorCode::InvalidArgument, "restart applies to GMRES runs and must be at least 1");
    }
  }
}

// ---------------------------------------------------------------- JSON

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw Error(ErrorCode::ParseError, msg);
}

AlphaPolicy alpha_from_json(const json& v) {
  if (v.is_number()) {
    AlphaPolicy p;
    p.kind = AlphaPolicy::Kind::Fixed;
    p.value = v.get<double>();
    return p;
  }
  require(v.is_string(), "alpha must be a number or a string");
  return AlphaPolicy::parse(v.get<std::string>());
}

RunSpec run_from_json(const json& j) {
  require(j.is_object(), "each run must be an object");
  RunSpec r;
  const bool stationary = j.contains("method");
  const bool krylov = j.contains("solver") || j.contains("preconditioner");
  require(stationary != krylov, "a run needs either 'method' or 'solver'/'preconditioner'");
  if (stationary) {
    r.kind = RunSpec::Kind::Stationary;
    r.method = method_from_string(j.at("method").get<std::string>());
  } else {
    r.kind = RunSpec::Kind::Krylov;
    r.solver = krylov_solver_from_string(j.value("solver", std::string("GMRES")));
    r.preconditioner = preconditioner_from_string(j.value("preconditioner", std::string("none")));
  }
  if (j.contains("alpha")) r.alpha = alpha_from_json(j.at("alpha"));
  if (j.contains("weight")) r.weight = weight_from_string(j.at("weight").get<std::string>());
  if (j.contains("restart")) r.restart = j.at("restart").get<int>();
  return r;
}

json run_to_json(const RunSpec& r) {
  json j;
  if (r.kind == RunSpec::Kind::Stationary) {
    j["method"] = std::string(to_string(r.method));
  } else {
    j["solver"] = std::string(to_string(r.solver));
    j["preconditioner"] = std::string(to_string(r.preconditioner));
  }
  if (r.alpha.kind == AlphaPolicy::Kind::Fixed) {
    j["alpha"] = r.alpha.value;
  } else {
    j["alpha"] = r.alpha.describe();
  }
  if (r.weight != WeightChoice::None) j["weight"] = std::string(weight_name(r.weight));
  if (r.restart) j["restart"] = *r.restart;
  return j;
}

}  // namespace

ExperimentSpec parse_spec(const json& doc) {
  try {
    require(doc.is_object(), "spec must be a JSON object");
    ExperimentSpec spec;
    if (doc.contains("problem")) {
      const json& p = doc.at("problem");
      if (p.is_string()) {
        spec.problem.name = p.get<std::string>();
      } else {
        require(p.is_object(), "problem must be a name or an object");
        if (p.contains("name")) spec.problem.name = p.at("name").get<std::string>();
        if (p.contains("files")) {
          const json& f = p.at("files");
          spec.problem.w_file = f.at("w").get<std::string>();
          spec.problem.t_file = f.at("t").get<std::string>();
          if (f.contains("b")) spec.problem.b_file = f.at("b").get<std::string>();
        }
        if (p.contains("helmholtz")) {
          const json& h = p.at("helmholtz");
          HelmholtzOptions o;
          spec.problem.helmholtz_n = h.at("n").get<Index>();
          const std::string dim = h.value("dim", std::string("1D"));
          require(dim == "1D" || dim == "2D", "helmholtz dim must be 1D or 2D");
          o.dim = dim == "1D" ? GridDim::One : GridDim::Two;
          o.mass = h.value("mass", o.mass);
          o.shift = h.value("shift", o.shift);
          o.omega = h.value("omega", o.omega);
          o.damping = h.value("damping", o.damping);
          if (h.contains("h")) o.h = h.at("h").get<double>();
          spec.problem.helmholtz = o;
        }
      }
    }
    require(doc.contains("runs") && doc.at("runs").is_array(), "spec needs a 'runs' array");
    for (const auto& r : doc.at("runs")) spec.runs.push_back(run_from_json(r));
    spec.tol = doc.value("tol", spec.tol);
    spec.max_iter = doc.value("max_iter", spec.max_iter);
    spec.seed = doc.value("seed", spec.seed);
    if (doc.contains("out")) spec.out = doc.at("out").get<std::string>();
    spec.workers = doc.value("workers", spec.workers);
    const std::string guess = doc.value("initial_guess", std::string("zero"));
    require(guess == "zero" || guess == "exact", "initial_guess must be 'zero' or 'exact'");
    spec.start_from_exact = guess == "exact";
    return spec;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, fmt::format("spec: {}", e.what()));
  }
}

ExperimentSpec load_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, fmt::format("cannot open spec {}", path.string()));
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, fmt::format("{}: {}", path.string(), e.what()));
  }
  return parse_spec(doc);
}

json to_json(const ExperimentSpec& spec) {
  json j;
  json p;
  if (spec.problem.w_file) {
    p["files"] = {{"w", spec.problem.w_file->string()}, {"t", spec.problem.t_file->string()}};
    if (spec.problem.b_file) p["files"]["b"] = spec.problem.b_file->string();
  } else if (spec.problem.helmholtz) {
    const auto& o = *spec.problem.helmholtz;
    p["helmholtz"] = {{"n", spec.problem.helmholtz_n}, {"dim", kDimNames[static_cast<int>(o.dim)]},
                      {"mass", o.mass},                {"shift", o.shift},
                      {"omega", o.omega},              {"damping", o.damping}};
    if (o.h) p["helmholtz"]["h"] = *o.h;
  } else {
    p["name"] = spec.problem.name;
  }
  j["problem"] = p;
  j["runs"] = json::array();
  for (const auto& r : spec.runs) j["runs"].push_back(run_to_json(r));
  j["tol"] = spec.tol;
  j["max_iter"] = spec.max_iter;
  j["seed"] = spec.seed;
  j["out"] = spec.out.string();
  j["initial_guess"] = spec.start_from_exact ? "exact" : "zero";
  j["workers"] = spec.workers;
  return j;
}

// ---------------------------------------------------------------- problems

GeneratedProblem build_problem(const ExperimentSpec& spec) {
  const auto& src = spec.problem;
  if (src.w_file) return load_problem(*src.w_file, *src.t_file, src.b_file);
  if (src.helmholtz) {
    HelmholtzOptions o = *src.helmholtz;
    o.seed = spec.seed;
    return generate_helmholtz_like(src.helmholtz_n, o);
  }
  if (src.name.rfind("random:", 0) == 0) {
    const auto n = static_cast<Index>(parse_number(src.name.substr(7), "random problem size"));
    return generate_random(n, spec.seed);
  }
  return named_problem(src.name);
}

std::optional<RealSymMatrix> weight_matrix(WeightChoice choice, const ComplexSymmetricSystem& sys) {
  switch (choice) {
    case WeightChoice::None: return std::nullopt;
    case WeightChoice::Identity: return RealSymMatrix::identity(sys.n(), sys.real_part().layout());
    case WeightChoice::RealPart: return sys.real_part();
    case WeightChoice::RealDiagonal: return RealSymMatrix::diagonal(sys.real_part().diagonal_entries(),
                                                                    sys.real_part().layout());
  }
  return std::nullopt;
}

SummaryMode summary_mode_for(Method m) {
  switch (m) {
    case Method::PLHSS_V: return SummaryMode::VGeneral;
    case Method::PLHSS_W: return SummaryMode::VIsW;
    case Method::PLHSS_T: return SummaryMode::VIsT;
    default: return SummaryMode::Unpreconditioned;
  }
}

struct ProblemAnalysis::Cache {
  std::mutex mutex;
  std::map<std::pair<int, int>, SpectralSummary> summaries;
};

ProblemAnalysis::ProblemAnalysis(ComplexSymmetricSystem sys)
    : sys_(std::move(sys)), cache_(std::make_shared<Cache>()) {}

const SpectralSummary& ProblemAnalysis::summary(SummaryMode mode, WeightChoice weight) const {
  const std::pair<int, int> key{static_cast<int>(mode), static_cast<int>(weight)};
  std::lock_guard lock(cache_->mutex);
  auto it = cache_->summaries.find(key);
  if (it == cache_->summaries.end()) {
    it = cache_->summaries.emplace(key, summarize(sys_, mode, weight_matrix(weight, sys_))).first;
  }
  return it->second;
}

double optimal_alpha_for(const RunSpec& run, const ProblemAnalysis& analysis, std::string* note) {
  const auto remark = [&](std::string text) {
    if (note) *note = std::move(text);
  };
  if (run.kind == RunSpec::Kind::Krylov) {
    if (run.preconditioner == PreconditionerKind::HSS) {
      const auto& s = analysis.summary(SummaryMode::Unpreconditioned);
      return std::sqrt(s.lambda_min * s.lambda_max);
    }
    return 1.0;
  }
  switch (run.method) {
    case Method::HSS: {
      const auto& s = analysis.summary(SummaryMode::Unpreconditioned);
      return std::sqrt(s.lambda_min * s.lambda_max);
    }
    case Method::PMHSS:
    case Method::LPMHSS:
      return 1.0;
    default:
      break;
  }
  const auto& s = analysis.summary(summary_mode_for(run.method), run.weight);
  const OptimalAlpha opt = optimal_alpha(s, scheme_for(run.method));
  if (opt.infinite) remark(fmt::format("alpha* is infinite, using {:g}", opt.usable_alpha));
  if (!opt.note.empty()) remark(opt.note);
  return opt.usable_alpha;
}

std::optional<double> predicted_bound(const RunSpec& run, const ProblemAnalysis& analysis, double alpha) {
  if (run.kind != RunSpec::Kind::Stationary || !is_lopsided(run.method)) return std::nullopt;
  try {
    const auto& s = analysis.summary(summary_mode_for(run.method), run.weight);
    return predicted_rate(alpha, s, scheme_for(run.method));
  } catch (const Error&) {
    return std::nullopt;
  }
}

}  // namespace lhss::bench
