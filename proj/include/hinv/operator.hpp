#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "hinv/exactla.hpp"

namespace hinv {

/// A linear endomorphism f of GF(p)^n together with its powers f^0 = I, ..., f^n.
class Operator {
 public:
  explicit Operator(MatrixF matrix);

  std::size_t dim() const noexcept { return matrix_.rows(); }
  PrimeField field() const noexcept { return matrix_.field(); }
  const MatrixF& matrix() const noexcept { return matrix_; }

  /// f^j for j <= n. For a nilpotent operator any j > n yields the zero matrix.
  const MatrixF& power(std::size_t j) const;

  VectorF apply(const VectorF& v) const { return matrix_ * v; }
  VectorF apply_power(std::size_t j, const VectorF& v) const { return power(j) * v; }

  bool is_nilpotent() const { return powers_.back().is_zero(); }
  /// Smallest m with f^m = 0; requires nilpotency.
  std::size_t nilpotency_index() const;

  /// f - lambda * I.
  Operator shifted(const Scalar& lambda) const;

 private:
  MatrixF matrix_;
  std::vector<MatrixF> powers_;
};

struct Eigenvalue {
  Scalar lambda;
  std::size_t multiplicity;
};

/// Roots of the characteristic polynomial found by evaluating det(f - lambda I)
/// at every lambda in GF(p); multiplicities are dim Ker (f - lambda I)^n.
/// Throws NonSplitCharPoly when the multiplicities do not add up to n.
std::vector<Eigenvalue> eigenvalues(const Operator& f);

/// One generalized eigenspace V_lambda with the nilpotent part of f acting on it.
struct EigenComponent {
  Scalar lambda;
  std::size_t multiplicity;
  Subspace space;
  /// (f - lambda I) restricted to V_lambda, in the coordinates of component_basis.
  Operator restriction;
  /// n x d; column j is the j-th RREF basis vector of V_lambda.
  MatrixF component_basis;

  VectorF to_ambient(const VectorF& local) const;
  /// Coordinates of an ambient vector lying in V_lambda.
  VectorF to_local(const VectorF& ambient) const;
  /// X must lie inside V_lambda.
  Subspace localize(const Subspace& x) const;
  Subspace globalize(const Subspace& local) const;
};

std::vector<EigenComponent> decompose(const Operator& f);

/// Elementary divisor exponents t_1 <= ... <= t_k of a nilpotent operator and a
/// generator tuple U = (u_1, ..., u_k) with e(u_i) = t_i.
struct JordanStructure {
  std::vector<std::size_t> exponents;
  std::vector<VectorF> generators;

  std::size_t size() const noexcept { return exponents.size(); }
  friend bool operator==(const JordanStructure&, const JordanStructure&) = default;
};

/// Deterministic Jordan chain extraction: chain tops are chosen from the
/// largest exponent down, each time taking the first RREF basis row of
/// Ker f^j that is independent of what is already spanned.
JordanStructure jordan_structure(const Operator& nilpotent);

/// The Jordan basis of a generator tuple as an n x n matrix, columns
/// u_1, f u_1, ..., f^{t_1 - 1} u_1, u_2, ...
MatrixF jordan_basis_matrix(const Operator& nilpotent, const JordanStructure& u);

/// Least l >= 0 with f^l x = 0.
std::size_t exponent(const Operator& nilpotent, const VectorF& x);

/// Height of a vector: the largest q with x in f^q V. The zero vector has
/// height minus infinity, represented by the dedicated Bottom alternative.
struct Bottom {
  friend bool operator==(Bottom, Bottom) = default;
};
using Height = std::variant<Bottom, std::size_t>;

Height height(const Operator& nilpotent, const VectorF& x);
std::string to_string(const Height& h);

/// span{x, fx, f^2 x, ...}.
Subspace cyclic_subspace(const Operator& f, const VectorF& x);

/// f(X) contained in X.
bool is_invariant_subspace(const Operator& f, const Subspace& x);

/// Matrix of f restricted to an invariant X, in the RREF basis coordinates of X.
MatrixF restricted_matrix(const Operator& f, const Subspace& x);

struct RestrictionStructure {
  JordanStructure structure;  // in X coordinates
  MatrixF coordinate_map;     // n x dim X, maps X coordinates into V
  std::vector<VectorF> ambient_generators;
};

/// Jordan structure of f on an invariant subspace X. Throws NotInvariant.
RestrictionStructure restriction_structure(const Operator& nilpotent, const Subspace& x);

/// Elementary divisor exponents (nonzero, ascending) of the map induced on V/X.
/// Throws NotInvariant.
std::vector<std::size_t> quotient_structure(const Operator& nilpotent, const Subspace& x);

/// Nilpotent Jordan matrix with blocks of the given sizes along the diagonal;
/// each block sends e_j to e_{j+1}.
MatrixF jordan_block_matrix(PrimeField field, std::span<const std::size_t> block_sizes);

}  // namespace hinv
