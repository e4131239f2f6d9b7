#pragma once

#include "hinv/exactla.hpp"

namespace hinv::detail {

/// Inverts a linear map on its image: for y in M(D), lift(y) is some x in D
/// with Mx = y. Built from one reduction of the stacked rows [Mx | x] over a
/// basis x of D.
class Lifter {
 public:
  Lifter(const MatrixF& map, const Subspace& domain);

  const Subspace& image() const { return image_; }
  /// y must lie in image().
  VectorF lift(const VectorF& y) const;

 private:
  Subspace image_;
  std::vector<VectorF> lifts_;
  std::size_t domain_dim_;
};

/// Coordinates of vectors with respect to a fixed independent list.
class CoordinateSolver {
 public:
  CoordinateSolver(PrimeField field, std::size_t n, std::span<const VectorF> independent);
  /// nullopt when y is outside the span.
  std::optional<VectorF> solve(const VectorF& y) const;

 private:
  Lifter lifter_;
};

}  // namespace hinv::detail
