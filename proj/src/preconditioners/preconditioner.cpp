#include "lhss/preconditioners/preconditioner.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <string>
#include <utility>

#include "lhss/numkit/error.hpp"

namespace lhss {

namespace {

constexpr Complex kI(0.0, 1.0);

constexpr std::array<std::pair<PreconditionerKind, std::string_view>, 7> kKindNames{{
    {PreconditionerKind::Identity, "Identity"},
    {PreconditionerKind::PLW, "PLW"},
    {PreconditionerKind::PLT, "PLT"},
    {PreconditionerKind::HSS, "HSS"},
    {PreconditionerKind::PMHSS, "PMHSS"},
    {PreconditionerKind::LPMHSS, "LPMHSS"},
    {PreconditionerKind::CtoR, "CtoR"},
}};

std::string upper(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return out;
}

}  // namespace

std::string_view to_string(PreconditionerKind k) noexcept {
  for (const auto& [kind, name] : kKindNames)
    if (kind == k) return name;
  return "?";
}

PreconditionerKind preconditioner_from_string(std::string_view name) {
  const std::string canon = upper(name);
  if (canon == "NONE") return PreconditionerKind::Identity;
  if (canon == "C-TO-R" || canon == "CTOR") return PreconditionerKind::CtoR;
  for (const auto& [kind, text] : kKindNames)
    if (upper(text) == canon) return kind;
  throw Error(ErrorCode::InvalidArgument, "unknown preconditioner '" + std::string(name) + "'");
}

struct Preconditioner::State {
  PreconditionerKind kind = PreconditionerKind::Identity;
  double alpha = 1.0;
  Index n = 0;
  bool complex_symmetric = true;
  std::function<ComplexVector(const ComplexVector&)> apply;
  std::function<RealVector(const RealVector&)> apply_real;
  std::function<ComplexMatrix()> dense;
  std::function<RealMatrix()> dense_real;
};

Preconditioner::Preconditioner() : state_(std::make_shared<State>()) {}

Preconditioner Preconditioner::build(PreconditionerKind kind, const ComplexSymmetricSystem& sys, double alpha,
                                     const std::optional<RealSymMatrix>& pmhss_weight) {
  if (!(alpha > 0.0)) throw Error(ErrorCode::InvalidArgument, "preconditioner alpha must be positive");
  auto st = std::make_shared<State>();
  st->kind = kind;
  st->alpha = alpha;
  st->n = sys.n();
  const double a = alpha;
  const Index n = sys.n();
  const RealSymMatrix w = sys.real_part();
  const RealSymMatrix t = sys.imag_part();

  switch (kind) {
    case PreconditionerKind::Identity:
      st->apply = [](const ComplexVector& r) { return r; };
      st->dense = [n] { return ComplexMatrix(ComplexMatrix::Identity(n, n)); };
      break;

    case PreconditionerKind::PLW: {
      const auto& tf = sys.imag_factor();
      const Complex scale = -kI * (a / (a + 1.0));
      st->apply = [scale, &tf, keep = sys](const ComplexVector& r) { return ComplexVector(scale * tf.solve(r)); };
      st->dense = [=] { return ComplexMatrix(kI * ((a + 1.0) / a) * t.to_dense().cast<Complex>()); };
      break;
    }

    case PreconditionerKind::PLT: {
      auto f = std::make_shared<SymIndefFactorization>(
          SymIndefFactorization::factorize(RealSymMatrix::combine(a, t, 1.0, w)));
      st->apply = [f, a](const ComplexVector& r) { return ComplexVector(f->solve(ComplexVector(-kI * a * r))); };
      st->dense = [=] {
        return ComplexMatrix(kI * (t.to_dense() + w.to_dense() / a).cast<Complex>());
      };
      break;
    }

    case PreconditionerKind::HSS: {
      auto first = std::make_shared<SpdFactorization>(SpdFactorization::factorize(w.shifted(a)));
      auto second = std::make_shared<ComplexSymFactorization>(
          ComplexSymFactorization::factorize(RealSymMatrix::identity(n, t.layout()).scaled(a), t));
      st->complex_symmetric = false;
      st->apply = [=](const ComplexVector& r) {
        return ComplexVector(2.0 * a * second->solve(first->solve(r)));
      };
      st->dense = [=] {
        const ComplexMatrix id = ComplexMatrix::Identity(n, n);
        const ComplexMatrix left = a * id + w.to_dense().cast<Complex>();
        const ComplexMatrix right = a * id + kI * t.to_dense().cast<Complex>();
        return ComplexMatrix(left * right / (2.0 * a));
      };
      break;
    }

    case PreconditionerKind::PMHSS: {
      const RealSymMatrix v = pmhss_weight ? *pmhss_weight : w;
      require_same_dimension(v.n(), n, "PMHSS weight");
      auto vf = std::make_shared<SpdFactorization>(SpdFactorization::factorize(v));
      auto first = std::make_shared<SpdFactorization>(SpdFactorization::factorize(RealSymMatrix::combine(a, v, 1.0, w)));
      auto second = std::make_shared<SymIndefFactorization>(
          SymIndefFactorization::factorize(RealSymMatrix::combine(a, v, 1.0, t)));
      // With V = W the product collapses to a multiple of αW+T, which is symmetric.
      st->complex_symmetric = !pmhss_weight || *pmhss_weight == w;
      const Complex scale = 2.0 * a / Complex(1.0, 1.0);
      st->apply = [=](const ComplexVector& r) {
        return ComplexVector(scale * second->solve(v.apply(first->solve(r))));
      };
      st->dense = [=] {
        const RealMatrix vd = v.to_dense();
        const RealMatrix left = a * vd + w.to_dense();
        const RealMatrix right = a * vd + t.to_dense();
        const RealMatrix middle = vf->solve(right);
        return ComplexMatrix((left * middle).cast<Complex>() * (Complex(1.0, 1.0) / (2.0 * a)));
      };
      break;
    }

    case PreconditionerKind::LPMHSS: {
      auto f = std::make_shared<SymIndefFactorization>(
          SymIndefFactorization::factorize(RealSymMatrix::combine(a, w, 1.0, t)));
      st->apply = [f, a](const ComplexVector& r) { return ComplexVector(a * f->solve(r)); };
      st->dense = [=] { return ComplexMatrix(((a * w.to_dense() + t.to_dense()) / a).cast<Complex>()); };
      break;
    }

    case PreconditionerKind::CtoR: {
      const auto& wf = sys.real_factor();
      std::shared_ptr<SymIndefFactorization> sum;
      try {
        sum = std::make_shared<SymIndefFactorization>(
            SymIndefFactorization::factorize(RealSymMatrix::combine(1.0, w, 1.0, t)));
      } catch (const Error& e) {
        throw Error(e.code(), std::string("W+T: ") + e.what());
      }
      st->complex_symmetric = false;
      st->apply_real = [=, &wf, keep = sys](const RealVector& r) {
        const RealVector f = r.head(n);
        const RealVector g = r.tail(n);
        const RealVector winv_f = wf.solve(f);
        const RealVector v = sum->solve(RealVector(w.apply(sum->solve(RealVector(g + t.apply(winv_f))))));
        const RealVector u = wf.solve(RealVector(f - t.apply(v)));
        RealVector z(2 * n);
        z << u, v;
        return z;
      };
      st->dense_real = [=] {
        const RealMatrix wd = w.to_dense(), td = t.to_dense();
        RealMatrix p(2 * n, 2 * n);
        p << wd, td, -td, wd + 2.0 * td;
        return p;
      };
      break;
    }
  }
  Preconditioner p;
  p.state_ = std::move(st);
  return p;
}

PreconditionerKind Preconditioner::kind() const noexcept { return state_->kind; }
double Preconditioner::alpha() const noexcept { return state_->alpha; }
Index Preconditioner::n() const noexcept { return state_->n; }
Index Preconditioner::operator_dimension() const noexcept {
  return operates_on_real_form() ? 2 * state_->n : state_->n;
}
bool Preconditioner::is_complex_symmetric() const noexcept { return state_->complex_symmetric; }

ComplexVector Preconditioner::apply(const ComplexVector& r) const {
  if (!state_->apply) throw Error(ErrorCode::InvalidArgument, "CtoR acts on the real 2n form; use apply_real");
  require_same_dimension(r.size(), state_->n, "preconditioner operand");
  return state_->apply(r);
}

RealVector Preconditioner::apply_real(const RealVector& r) const {
  if (!state_->apply_real) throw Error(ErrorCode::InvalidArgument, "only CtoR acts on the real form");
  require_same_dimension(r.size(), 2 * state_->n, "preconditioner operand");
  return state_->apply_real(r);
}

ComplexMatrix Preconditioner::dense_matrix() const {
  if (!state_->dense) throw Error(ErrorCode::InvalidArgument, "CtoR has no complex n x n matrix");
  return state_->dense();
}

RealMatrix Preconditioner::dense_real_matrix() const {
  if (!state_->dense_real) throw Error(ErrorCode::InvalidArgument, "only CtoR has a real 2n x 2n matrix");
  return state_->dense_real();
}

RealVector real_form_apply(const ComplexSymmetricSystem& sys, const RealVector& v) {
  const Index n = sys.n();
  require_same_dimension(v.size(), 2 * n, "real-form operand");
  const RealVector top = v.head(n), bottom = v.tail(n);
  const auto& w = sys.real_part();
  const auto& t = sys.imag_part();
  RealVector out(2 * n);
  out << w.apply(top) + t.apply(bottom), w.apply(bottom) - t.apply(top);
  return out;
}

RealVector real_form_rhs(const ComplexVector& b) { return to_real_form(b); }

RealVector to_real_form(const ComplexVector& x) {
  RealVector out(2 * x.size());
  out << x.real(), -x.imag();
  return out;
}

ComplexVector from_real_form(const RealVector& v) {
  const Index n = v.size() / 2;
  ComplexVector out(n);
  out.real() = v.head(n);
  out.imag() = -v.tail(n);
  return out;
}

RealMatrix real_form_dense(const ComplexSymmetricSystem& sys) {
  const RealMatrix w = sys.real_part().to_dense(), t = sys.imag_part().to_dense();
  const Index n = sys.n();
  RealMatrix m(2 * n, 2 * n);
  m << w, t, -t, w;
  return m;
}

}  // namespace lhss
