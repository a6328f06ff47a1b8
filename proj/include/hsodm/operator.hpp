#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>

#include "hsodm/vec.hpp"

namespace hsodm {

// Matrix-free symmetric linear map.
//
// The apply callable is shared and immutable. The matvec counter is a handle:
// copies of an operator report into the same counter, so an operator captured
// inside another (a Hessian inside a bordered GHM matrix) stays observable.
// Use with_fresh_counter() to give an independent run its own accumulator.
class SymmetricOperator {
 public:
  using ApplyFn = std::function<void(std::span<const double> x, std::span<double> y)>;

  SymmetricOperator(std::size_t dim, ApplyFn fn, std::optional<double> norm_hint = std::nullopt);

  std::size_t dim() const { return dim_; }
  std::optional<double> norm_hint() const { return norm_hint_; }

  void apply(std::span<const double> x, std::span<double> y) const;
  Vec apply(std::span<const double> x) const;

  std::uint64_t matvec_count() const { return *count_; }
  void reset_count() const { *count_ = 0; }

  SymmetricOperator with_fresh_counter() const;
  SymmetricOperator with_norm_hint(double hint) const;

 private:
  std::size_t dim_;
  std::shared_ptr<const ApplyFn> fn_;
  std::optional<double> norm_hint_;
  std::shared_ptr<std::uint64_t> count_;
};

}  // namespace hsodm
