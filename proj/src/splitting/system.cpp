#include "lhss/splitting/system.hpp"

#include <mutex>
#include <optional>

#include "lhss/numkit/error.hpp"
#include "lhss/numkit/residual.hpp"

namespace lhss {

struct ComplexSymmetricSystem::Shared {
  RealSymMatrix real_part;
  RealSymMatrix imag_part;
  std::mutex mutex;
  std::optional<SpdFactorization> real_factor;
  std::optional<SymIndefFactorization> imag_factor;
};

ComplexSymmetricSystem::ComplexSymmetricSystem(RealSymMatrix real_part, RealSymMatrix imag_part, ComplexVector rhs)
    : shared_(std::make_shared<Shared>()), rhs_(std::move(rhs)) {
  require_same_dimension(real_part.n(), imag_part.n(), "W and T");
  require_same_dimension(rhs_.size(), real_part.n(), "right-hand side");
  require_finite(rhs_, "right-hand side");
  shared_->real_part = std::move(real_part);
  shared_->imag_part = std::move(imag_part);
}

Index ComplexSymmetricSystem::n() const noexcept { return shared_ ? shared_->real_part.n() : 0; }
const RealSymMatrix& ComplexSymmetricSystem::real_part() const noexcept { return shared_->real_part; }
const RealSymMatrix& ComplexSymmetricSystem::imag_part() const noexcept { return shared_->imag_part; }
const ComplexVector& ComplexSymmetricSystem::rhs() const noexcept { return rhs_; }

ComplexSymmetricSystem ComplexSymmetricSystem::with_rhs(ComplexVector rhs) const {
  require_same_dimension(rhs.size(), n(), "right-hand side");
  require_finite(rhs, "right-hand side");
  ComplexSymmetricSystem out = *this;
  out.rhs_ = std::move(rhs);
  return out;
}

ComplexVector ComplexSymmetricSystem::apply(const ComplexVector& x) const {
  return apply_complex_symmetric(real_part(), imag_part(), x);
}

double ComplexSymmetricSystem::relative_residual(const ComplexVector& x) const {
  return lhss::relative_residual(real_part(), imag_part(), x, rhs_);
}

ComplexMatrix ComplexSymmetricSystem::dense_matrix() const {
  ComplexMatrix a(n(), n());
  a.real() = real_part().to_dense();
  a.imag() = imag_part().to_dense();
  return a;
}

const SpdFactorization& ComplexSymmetricSystem::real_factor() const {
  std::lock_guard lock(shared_->mutex);
  if (!shared_->real_factor) shared_->real_factor = SpdFactorization::factorize(shared_->real_part);
  return *shared_->real_factor;
}

const SymIndefFactorization& ComplexSymmetricSystem::imag_factor() const {
  std::lock_guard lock(shared_->mutex);
  if (!shared_->imag_factor) shared_->imag_factor = SymIndefFactorization::factorize(shared_->imag_part);
  return *shared_->imag_factor;
}

void ComplexSymmetricSystem::validate() const {
  real_factor();
  imag_factor();
}

}  // namespace lhss
