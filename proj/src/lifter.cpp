#include "hinv/detail/lifter.hpp"

namespace hinv::detail {

Lifter::Lifter(const MatrixF& map, const Subspace& domain)
    : image_(Subspace::zero(map.field(), map.rows())), domain_dim_(domain.ambient_dim()) {
  const PrimeField f = map.field();
  const std::size_t n = map.rows();
  const std::size_t m = domain.ambient_dim();
  MatrixF block(f, domain.dim(), n + m);
  for (std::size_t a = 0; a < domain.dim(); ++a) {
    VectorF x = domain.basis_vector(a);
    VectorF y = map * x;
    for (std::size_t j = 0; j < n; ++j) block(a, j) = y[j];
    for (std::size_t j = 0; j < m; ++j) block(a, n + j) = x[j];
  }
  RrefResult r = rref_with_pivots(block);
  // Rows pivoting inside the left block have reduced left halves forming the
  // canonical basis of the image; their right halves are preimages.
  std::vector<VectorF> left;
  for (std::size_t i = 0; i < r.pivots.size() && r.pivots[i] < n; ++i) {
    VectorF y(f, n), x(f, m);
    for (std::size_t j = 0; j < n; ++j) y.set(j, r.reduced(i, j));
    for (std::size_t j = 0; j < m; ++j) x.set(j, r.reduced(i, n + j));
    left.push_back(std::move(y));
    lifts_.push_back(std::move(x));
  }
  image_ = Subspace::span(f, n, left);
}

VectorF Lifter::lift(const VectorF& y) const {
  VectorF x(y.field(), domain_dim_);
  for (std::size_t i = 0; i < lifts_.size(); ++i) x.add_scaled(y[image_.pivots()[i]], lifts_[i]);
  return x;
}

namespace {

MatrixF columns_of(PrimeField field, std::size_t n, std::span<const VectorF> vs) {
  return MatrixF::from_columns(field, n, vs);
}

}  // namespace

CoordinateSolver::CoordinateSolver(PrimeField field, std::size_t n, std::span<const VectorF> independent)
    : lifter_(columns_of(field, n, independent), Subspace::whole(field, independent.size())) {
  if (lifter_.image().dim() != independent.size()) {
    fail(ErrorCode::DimensionMismatch, "coordinate system built from dependent vectors");
  }
}

std::optional<VectorF> CoordinateSolver::solve(const VectorF& y) const {
  if (!lifter_.image().contains(y)) return std::nullopt;
  return lifter_.lift(y);
}

}  // namespace hinv::detail
