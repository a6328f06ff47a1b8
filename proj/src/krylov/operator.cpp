#include "hsodm/operator.hpp"

#include "hsodm/errors.hpp"

namespace hsodm {

SymmetricOperator::SymmetricOperator(std::size_t dim, ApplyFn fn, std::optional<double> norm_hint)
    : dim_(dim),
      fn_(std::make_shared<const ApplyFn>(std::move(fn))),
      norm_hint_(norm_hint),
      count_(std::make_shared<std::uint64_t>(0)) {
  if (norm_hint_ && !(*norm_hint_ >= 0.0)) throw InvalidInput("norm hint must be nonnegative");
}

void SymmetricOperator::apply(std::span<const double> x, std::span<double> y) const {
  if (x.size() != dim_ || y.size() != dim_) throw InvalidInput("operator apply: dimension mismatch");
  (*fn_)(x, y);
  ++*count_;
}

Vec SymmetricOperator::apply(std::span<const double> x) const {
  Vec y(dim_);
  apply(x, y);
  return y;
}

SymmetricOperator SymmetricOperator::with_fresh_counter() const {
  SymmetricOperator copy = *this;
  copy.count_ = std::make_shared<std::uint64_t>(0);
  return copy;
}

SymmetricOperator SymmetricOperator::with_norm_hint(double hint) const {
  if (!(hint >= 0.0)) throw InvalidInput("norm hint must be nonnegative");
  SymmetricOperator copy = *this;
  copy.norm_hint_ = hint;
  return copy;
}

}  // namespace hsodm
