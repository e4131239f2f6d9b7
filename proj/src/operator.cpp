#include "hinv/operator.hpp"

#include <algorithm>
#include <numeric>

namespace hinv {

Operator::Operator(MatrixF matrix) : matrix_(std::move(matrix)) {
  if (!matrix_.is_square()) {
    fail(ErrorCode::DimensionMismatch, "operator matrix must be square, got " + std::to_string(matrix_.rows()) +
                                           "x" + std::to_string(matrix_.cols()));
  }
  const std::size_t n = matrix_.rows();
  powers_.reserve(n + 1);
  powers_.push_back(MatrixF::identity(matrix_.field(), n));
  for (std::size_t j = 1; j <= n; ++j) powers_.push_back(powers_.back() * matrix_);
}

const MatrixF& Operator::power(std::size_t j) const {
  if (j < powers_.size()) return powers_[j];
  if (is_nilpotent()) return powers_.back();
  fail(ErrorCode::DimensionMismatch, "power " + std::to_string(j) + " beyond the cached range of a non-nilpotent operator");
}

std::size_t Operator::nilpotency_index() const {
  if (!is_nilpotent()) fail(ErrorCode::NotNilpotent, "operator is not nilpotent");
  std::size_t m = 0;
  while (!powers_[m].is_zero()) ++m;
  return m;
}

Operator Operator::shifted(const Scalar& lambda) const {
  if (lambda.field() != field()) fail(ErrorCode::FieldMismatch, "eigenvalue from a different field");
  return Operator(matrix_ - MatrixF::identity(field(), dim()).scaled(std::uint8_t(lambda.value())));
}

std::vector<Eigenvalue> eigenvalues(const Operator& f) {
  const PrimeField field = f.field();
  const std::size_t n = f.dim();
  std::vector<Eigenvalue> out;
  std::size_t total = 0;
  for (unsigned l = 0; l < field.modulus(); ++l) {
    const Scalar lambda = field.element(l);
    Operator shifted = f.shifted(lambda);
    if (!shifted.matrix().determinant().is_zero()) continue;
    const std::size_t mult = n - shifted.power(n).rank();
    out.push_back({lambda, mult});
    total += mult;
  }
  if (total != n) {
    fail(ErrorCode::NonSplitCharPoly, "eigenvalue multiplicities in GF(" + std::to_string(field.modulus()) +
                                          ") add up to " + std::to_string(total) + ", not " + std::to_string(n));
  }
  return out;
}

// ---------------------------------------------------------------- components

VectorF EigenComponent::to_ambient(const VectorF& local) const { return component_basis * local; }

VectorF EigenComponent::to_local(const VectorF& ambient) const {
  auto coords = space.coordinates(ambient);
  if (!coords) fail(ErrorCode::ComponentSplitFailed, "vector does not lie in the generalized eigenspace");
  return VectorF(space.field(), std::move(*coords));
}

Subspace EigenComponent::localize(const Subspace& x) const {
  std::vector<VectorF> local;
  local.reserve(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) local.push_back(to_local(x.basis_vector(i)));
  return Subspace::span(space.field(), space.dim(), local);
}

Subspace EigenComponent::globalize(const Subspace& local) const {
  return map_subspace(component_basis, local);
}

std::vector<EigenComponent> decompose(const Operator& f) {
  const std::size_t n = f.dim();
  const PrimeField field = f.field();
  std::vector<EigenComponent> out;
  std::size_t total = 0;
  Subspace spanned = Subspace::zero(field, n);
  for (const Eigenvalue& ev : eigenvalues(f)) {
    Operator shifted = f.shifted(ev.lambda);
    Subspace space = kernel(shifted.power(n));
    const std::size_t d = space.dim();
    MatrixF basis = space.basis().transpose();
    // (f - lambda) b_j expressed in the RREF basis: coefficients sit at the pivots.
    MatrixF local(field, d, d);
    for (std::size_t j = 0; j < d; ++j) {
      VectorF image_vec = shifted.apply(space.basis_vector(j));
      auto coords = space.coordinates(image_vec);
      if (!coords) fail(ErrorCode::ComponentSplitFailed, "generalized eigenspace is not invariant");
      for (std::size_t i = 0; i < d; ++i) local(i, j) = (*coords)[i];
    }
    total += d;
    spanned = sum(spanned, space);
    out.push_back({ev.lambda, ev.multiplicity, std::move(space), Operator(std::move(local)), std::move(basis)});
  }
  if (total != n || !spanned.is_whole()) {
    fail(ErrorCode::ComponentSplitFailed, "generalized eigenspaces do not form a direct sum decomposition");
  }
  return out;
}

// ---------------------------------------------------------------- Jordan structure

JordanStructure jordan_structure(const Operator& nilpotent) {
  const std::size_t m = nilpotent.nilpotency_index();
  const PrimeField field = nilpotent.field();
  const std::size_t n = nilpotent.dim();

  std::vector<Subspace> kernels;
  kernels.reserve(m + 1);
  for (std::size_t j = 0; j <= m; ++j) kernels.push_back(kernel(nilpotent.power(j)));

  struct Chain {
    VectorF top;
    std::size_t length;
  };
  std::vector<Chain> picked;
  for (std::size_t j = m; j >= 1; --j) {
    // Already spanned inside Ker f^j: Ker f^{j-1} plus the parts of longer chains.
    std::vector<VectorF> spanning = kernels[j - 1].basis_vectors();
    for (const Chain& c : picked) spanning.push_back(nilpotent.apply_power(c.length - j, c.top));
    Subspace running = Subspace::span(field, n, spanning);
    for (std::size_t i = 0; i < kernels[j].dim(); ++i) {
      VectorF candidate = kernels[j].basis_vector(i);
      if (running.contains(candidate)) continue;
      running = sum(running, Subspace::span(field, n, {candidate}));
      picked.push_back({std::move(candidate), j});
    }
  }
  std::stable_sort(picked.begin(), picked.end(),
                   [](const Chain& a, const Chain& b) { return a.length < b.length; });
  JordanStructure out;
  for (auto& c : picked) {
    out.exponents.push_back(c.length);
    out.generators.push_back(std::move(c.top));
  }
  return out;
}

MatrixF jordan_basis_matrix(const Operator& nilpotent, const JordanStructure& u) {
  std::vector<VectorF> cols;
  for (std::size_t i = 0; i < u.size(); ++i) {
    VectorF v = u.generators[i];
    for (std::size_t j = 0; j < u.exponents[i]; ++j) {
      cols.push_back(v);
      v = nilpotent.apply(v);
    }
  }
  return MatrixF::from_columns(nilpotent.field(), nilpotent.dim(), cols);
}

std::size_t exponent(const Operator& nilpotent, const VectorF& x) {
  VectorF v = x;
  std::size_t l = 0;
  while (!v.is_zero()) {
    if (l > nilpotent.dim()) fail(ErrorCode::NotNilpotent, "vector is not annihilated by a power of f");
    v = nilpotent.apply(v);
    ++l;
  }
  return l;
}

Height height(const Operator& nilpotent, const VectorF& x) {
  if (x.is_zero()) return Bottom{};
  if (!nilpotent.is_nilpotent()) fail(ErrorCode::NotNilpotent, "height needs a nilpotent operator");
  std::size_t q = 0;
  while (q + 1 <= nilpotent.dim() && image(nilpotent.power(q + 1)).contains(x)) ++q;
  return q;
}

std::string to_string(const Height& h) {
  if (std::holds_alternative<Bottom>(h)) return "-inf";
  return std::to_string(std::get<std::size_t>(h));
}

Subspace cyclic_subspace(const Operator& f, const VectorF& x) {
  const PrimeField field = f.field();
  const std::size_t n = f.dim();
  Subspace s = Subspace::zero(field, n);
  VectorF v = x;
  while (!s.contains(v)) {
    s = sum(s, Subspace::span(field, n, {v}));
    v = f.apply(v);
  }
  return s;
}

bool is_invariant_subspace(const Operator& f, const Subspace& x) {
  if (x.ambient_dim() != f.dim()) fail(ErrorCode::AmbientMismatch, "subspace ambient differs from operator size");
  return maps_into(f.matrix(), x, x);
}

MatrixF restricted_matrix(const Operator& f, const Subspace& x) {
  if (!is_invariant_subspace(f, x)) fail(ErrorCode::NotInvariant, "subspace is not invariant: " + x.to_string());
  const std::size_t d = x.dim();
  MatrixF local(f.field(), d, d);
  for (std::size_t j = 0; j < d; ++j) {
    auto coords = x.coordinates(f.apply(x.basis_vector(j)));
    for (std::size_t i = 0; i < d; ++i) local(i, j) = (*coords)[i];
  }
  return local;
}

RestrictionStructure restriction_structure(const Operator& nilpotent, const Subspace& x) {
  Operator local(restricted_matrix(nilpotent, x));
  RestrictionStructure out{jordan_structure(local), x.basis().transpose(), {}};
  for (const VectorF& g : out.structure.generators) out.ambient_generators.push_back(out.coordinate_map * g);
  return out;
}

std::vector<std::size_t> quotient_structure(const Operator& nilpotent, const Subspace& x) {
  if (!is_invariant_subspace(nilpotent, x)) fail(ErrorCode::NotInvariant, "subspace is not invariant: " + x.to_string());
  const std::size_t n = nilpotent.dim();
  // Unit vectors at the non-pivot columns of X complete its RREF basis; the
  // residual of f(e_q) modulo X has zeros at X's pivots, so its remaining
  // entries are the quotient coordinates.
  std::vector<bool> is_pivot(n, false);
  for (std::size_t p : x.pivots()) is_pivot[p] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < n; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  const std::size_t q = free_cols.size();
  if (q == 0) return {};
  MatrixF induced(nilpotent.field(), q, q);
  for (std::size_t j = 0; j < q; ++j) {
    VectorF residual = x.reduce(nilpotent.apply(VectorF::unit(nilpotent.field(), n, free_cols[j])));
    for (std::size_t i = 0; i < q; ++i) induced(i, j) = residual[free_cols[i]];
  }
  return jordan_structure(Operator(std::move(induced))).exponents;
}

MatrixF jordan_block_matrix(PrimeField field, std::span<const std::size_t> block_sizes) {
  const std::size_t n = std::accumulate(block_sizes.begin(), block_sizes.end(), std::size_t{0});
  MatrixF m(field, n, n);
  std::size_t offset = 0;
  for (std::size_t size : block_sizes) {
    for (std::size_t j = 0; j + 1 < size; ++j) m(offset + j + 1, offset + j) = 1;
    offset += size;
  }
  return m;
}

}  // namespace hinv
