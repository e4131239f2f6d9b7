#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hinv/gf.hpp"

namespace hinv {

/// Default limit on p^dim for anything that walks every vector of a subspace.
inline constexpr std::uint64_t kDefaultVectorCap = std::uint64_t{1} << 20;

/// Dense vector over GF(p). Entries are stored as reduced residues.
class VectorF {
 public:
  VectorF(PrimeField field, std::size_t n) : field_(field), entries_(n, 0) {}
  VectorF(PrimeField field, std::vector<std::uint8_t> entries);

  static VectorF from_ints(PrimeField field, std::span<const long long> values);
  static VectorF from_ints(PrimeField field, std::initializer_list<long long> values) {
    return from_ints(field, std::span<const long long>(values.begin(), values.size()));
  }
  static VectorF unit(PrimeField field, std::size_t n, std::size_t i);

  PrimeField field() const noexcept { return field_; }
  std::size_t size() const noexcept { return entries_.size(); }

  std::uint8_t operator[](std::size_t i) const noexcept { return entries_[i]; }
  Scalar at(std::size_t i) const { return Scalar(field_, entries_.at(i)); }
  void set(std::size_t i, std::uint8_t value) { entries_.at(i) = field_.reduce(value); }
  std::span<const std::uint8_t> raw() const noexcept { return entries_; }

  bool is_zero() const noexcept;
  /// Index of the first nonzero entry, or size() for the zero vector.
  std::size_t leading_index() const noexcept;

  VectorF& operator+=(const VectorF& other);
  VectorF& operator-=(const VectorF& other);
  /// this += c * other, with c a raw residue.
  VectorF& add_scaled(std::uint8_t c, const VectorF& other);
  VectorF scaled(std::uint8_t c) const;

  friend VectorF operator+(VectorF a, const VectorF& b) { return a += b; }
  friend VectorF operator-(VectorF a, const VectorF& b) { return a -= b; }
  friend bool operator==(const VectorF&, const VectorF&) = default;
  friend std::strong_ordering operator<=>(const VectorF& a, const VectorF& b) {
    return a.entries_ <=> b.entries_;
  }

  std::string to_string() const;

 private:
  PrimeField field_;
  std::vector<std::uint8_t> entries_;
};

/// Dense row-major matrix over GF(p).
class MatrixF {
 public:
  MatrixF(PrimeField field, std::size_t rows, std::size_t cols)
      : field_(field), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static MatrixF identity(PrimeField field, std::size_t n);
  static MatrixF from_ints(PrimeField field, const std::vector<std::vector<long long>>& rows);
  /// Stacks the given vectors as rows. `cols` is needed when the list is empty.
  static MatrixF from_rows(PrimeField field, std::size_t cols, std::span<const VectorF> rows);
  static MatrixF from_columns(PrimeField field, std::size_t rows, std::span<const VectorF> cols);
  static MatrixF diagonal(PrimeField field, std::span<const long long> entries);

  PrimeField field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  std::uint8_t operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }
  std::uint8_t& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
  Scalar at(std::size_t i, std::size_t j) const;
  std::span<const std::uint8_t> row_span(std::size_t i) const noexcept {
    return {data_.data() + i * cols_, cols_};
  }

  VectorF row(std::size_t i) const;
  VectorF col(std::size_t j) const;
  std::vector<VectorF> row_vectors() const;
  MatrixF transpose() const;

  bool is_zero() const noexcept;
  std::size_t rank() const;
  Scalar determinant() const;
  std::optional<MatrixF> inverse() const;
  MatrixF pow(std::size_t k) const;

  MatrixF& operator+=(const MatrixF& other);
  MatrixF& operator-=(const MatrixF& other);
  MatrixF scaled(std::uint8_t c) const;

  friend MatrixF operator+(MatrixF a, const MatrixF& b) { return a += b; }
  friend MatrixF operator-(MatrixF a, const MatrixF& b) { return a -= b; }
  friend MatrixF operator*(const MatrixF& a, const MatrixF& b);
  friend VectorF operator*(const MatrixF& a, const VectorF& v);
  friend bool operator==(const MatrixF&, const MatrixF&) = default;
  friend std::strong_ordering operator<=>(const MatrixF& a, const MatrixF& b);

  std::string to_string() const;

 private:
  PrimeField field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::uint8_t> data_;
};

struct RrefResult {
  MatrixF reduced;                  // nonzero rows only
  std::vector<std::size_t> pivots;  // pivot column of each row
};

/// Canonical reduced row-echelon form with zero rows dropped. Over GF(2) the
/// reduction runs on bit-packed rows; the result is identical to the generic path.
MatrixF rref(const MatrixF& m);
RrefResult rref_with_pivots(const MatrixF& m);

namespace detail {
RrefResult rref_generic(const MatrixF& m);
RrefResult rref_gf2(const MatrixF& m);
}  // namespace detail

/// A subspace of GF(p)^n held as its canonical RREF basis (one vector per row).
/// Two Subspace values are equal exactly when they are the same set.
class Subspace {
 public:
  static Subspace zero(PrimeField field, std::size_t n);
  static Subspace whole(PrimeField field, std::size_t n);
  /// Row space of an arbitrary matrix.
  static Subspace row_space(const MatrixF& rows);
  static Subspace span(PrimeField field, std::size_t n, std::span<const VectorF> vectors);
  static Subspace span(PrimeField field, std::size_t n, std::initializer_list<VectorF> vectors) {
    return span(field, n, std::span<const VectorF>(vectors.begin(), vectors.size()));
  }

  PrimeField field() const noexcept { return basis_.field(); }
  std::size_t ambient_dim() const noexcept { return basis_.cols(); }
  std::size_t dim() const noexcept { return basis_.rows(); }
  const MatrixF& basis() const noexcept { return basis_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }
  VectorF basis_vector(std::size_t i) const { return basis_.row(i); }
  std::vector<VectorF> basis_vectors() const { return basis_.row_vectors(); }
  bool is_zero() const noexcept { return dim() == 0; }
  bool is_whole() const noexcept { return dim() == ambient_dim(); }

  /// v minus its projection along the pivot columns; zero iff v lies in the subspace.
  VectorF reduce(const VectorF& v) const;
  bool contains(const VectorF& v) const;
  bool is_subspace_of(const Subspace& other) const;
  /// Coordinates of v with respect to the RREF basis (the entries at the pivot columns).
  std::optional<std::vector<std::uint8_t>> coordinates(const VectorF& v) const;
  VectorF combine(std::span<const std::uint8_t> coefficients) const;

  friend bool operator==(const Subspace& a, const Subspace& b) { return a.basis_ == b.basis_; }
  /// Dimension first, then the RREF entries lexicographically.
  friend std::strong_ordering operator<=>(const Subspace& a, const Subspace& b);

  std::string to_string() const;

 private:
  Subspace(MatrixF basis, std::vector<std::size_t> pivots)
      : basis_(std::move(basis)), pivots_(std::move(pivots)) {}

  MatrixF basis_;
  std::vector<std::size_t> pivots_;
};

struct SubspaceHash {
  std::size_t operator()(const Subspace& s) const noexcept;
};

/// Null space {x : Mx = 0}.
Subspace kernel(const MatrixF& m);
/// Column space of M.
Subspace image(const MatrixF& m);
Subspace sum(const Subspace& a, const Subspace& b);
/// Intersection by the Zassenhaus block reduction.
Subspace intersect(const Subspace& a, const Subspace& b);
/// M(X).
Subspace map_subspace(const MatrixF& m, const Subspace& x);
/// {u : Mu in X}.
Subspace preimage(const MatrixF& m, const Subspace& x);
/// Matrix Q with Qx = 0 exactly for x in X.
MatrixF annihilator(const Subspace& x);
/// True iff M(X) is contained in Y.
bool maps_into(const MatrixF& m, const Subspace& x, const Subspace& y);

/// p^e, or nullopt when it exceeds `cap`.
std::optional<std::uint64_t> bounded_power(std::uint64_t p, std::size_t e, std::uint64_t cap);

/// Visits all p^dim vectors of S in odometer order over the RREF coordinates
/// (first coordinate fastest). The callback returns false to stop early.
/// Throws EnumerationTooLarge when p^dim exceeds `cap`.
void for_each_vector(const Subspace& s, const std::function<bool(const VectorF&)>& visit,
                     std::uint64_t cap = kDefaultVectorCap);
std::vector<VectorF> enumerate_vectors(const Subspace& s, std::uint64_t cap = kDefaultVectorCap);

}  // namespace hinv
