#pragma once

// Fixed-size vector representations for the exhaustive sweeps (generator
// tuples, automorphisms, commutant members). Enumeration caps keep the
// ambient dimension small, so vectors fit in one machine word over GF(2)
// and in a small byte array otherwise.

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "hinv/exactla.hpp"

namespace hinv::detail {

inline constexpr std::size_t kMaxPackedDim = 32;

struct Gf2Ops {
  using Vec = std::uint64_t;

  PrimeField field;
  std::size_t n;

  Gf2Ops(PrimeField f, std::size_t dim) : field(f), n(dim) {}

  Vec zero() const { return 0; }
  static bool is_zero(Vec a) { return a == 0; }
  Vec add(Vec a, Vec b) const { return a ^ b; }
  Vec sub(Vec a, Vec b) const { return a ^ b; }
  Vec scale(std::uint8_t c, Vec a) const { return (c & 1) ? a : 0; }
  std::uint8_t get(Vec a, std::size_t i) const { return std::uint8_t((a >> i) & 1); }
  void set(Vec& a, std::size_t i, std::uint8_t c) const {
    a = (a & ~(Vec{1} << i)) | (Vec(c & 1) << i);
  }
  std::size_t leading(Vec a) const { return a ? std::size_t(std::countr_zero(a)) : n; }

  Vec pack(const VectorF& v) const {
    Vec out = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (v[i]) out |= Vec{1} << i;
    return out;
  }
  VectorF unpack(Vec a) const {
    VectorF v(field, n);
    for (std::size_t i = 0; i < n; ++i)
      if ((a >> i) & 1) v.set(i, 1);
    return v;
  }
};

struct GfpOps {
  using Vec = std::array<std::uint8_t, kMaxPackedDim>;

  PrimeField field;
  std::size_t n;

  GfpOps(PrimeField f, std::size_t dim) : field(f), n(dim) {}

  Vec zero() const { return Vec{}; }
  bool is_zero(const Vec& a) const {
    for (std::size_t i = 0; i < n; ++i)
      if (a[i]) return false;
    return true;
  }
  Vec add(const Vec& a, const Vec& b) const {
    Vec out{};
    for (std::size_t i = 0; i < n; ++i) out[i] = field.add(a[i], b[i]);
    return out;
  }
  Vec sub(const Vec& a, const Vec& b) const {
    Vec out{};
    for (std::size_t i = 0; i < n; ++i) out[i] = field.sub(a[i], b[i]);
    return out;
  }
  Vec scale(std::uint8_t c, const Vec& a) const {
    Vec out{};
    if (c == 0) return out;
    for (std::size_t i = 0; i < n; ++i) out[i] = field.mul(c, a[i]);
    return out;
  }
  std::uint8_t get(const Vec& a, std::size_t i) const { return a[i]; }
  void set(Vec& a, std::size_t i, std::uint8_t c) const { a[i] = c; }
  std::size_t leading(const Vec& a) const {
    for (std::size_t i = 0; i < n; ++i)
      if (a[i]) return i;
    return n;
  }

  Vec pack(const VectorF& v) const {
    Vec out{};
    for (std::size_t i = 0; i < n; ++i) out[i] = v[i];
    return out;
  }
  VectorF unpack(const Vec& a) const {
    return VectorF(field, std::vector<std::uint8_t>(a.begin(), a.begin() + std::ptrdiff_t(n)));
  }
};

/// A linear map stored by columns.
template <class Ops>
struct PackedMap {
  using Vec = typename Ops::Vec;
  std::vector<Vec> columns;

  PackedMap() = default;
  PackedMap(const Ops& ops, const MatrixF& m) {
    columns.reserve(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) columns.push_back(ops.pack(m.col(j)));
  }

  Vec apply(const Ops& ops, const Vec& v) const {
    Vec out = ops.zero();
    for (std::size_t j = 0; j < columns.size(); ++j) {
      const std::uint8_t c = ops.get(v, j);
      if (c) out = ops.add(out, ops.scale(c, columns[j]));
    }
    return out;
  }
};

/// Reduced echelon basis maintained incrementally: every pivot coordinate is
/// zero in all other rows, and pivot entries are 1.
template <class Ops>
class PackedEchelon {
 public:
  using Vec = typename Ops::Vec;

  std::size_t rank() const { return rows_.size(); }

  Vec reduce(const Ops& ops, Vec v) const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const std::uint8_t c = ops.get(v, pivots_[i]);
      if (c) v = ops.sub(v, ops.scale(c, rows_[i]));
    }
    return v;
  }

  bool contains(const Ops& ops, const Vec& v) const { return ops.is_zero(reduce(ops, v)); }

  /// Adds v to the span; returns false if it was already contained.
  bool insert(const Ops& ops, const Vec& v) {
    Vec r = reduce(ops, v);
    if (ops.is_zero(r)) return false;
    const std::size_t piv = ops.leading(r);
    r = ops.scale(ops.field.inv(ops.get(r, piv)), r);
    for (auto& row : rows_) {
      const std::uint8_t c = ops.get(row, piv);
      if (c) row = ops.sub(row, ops.scale(c, r));
    }
    rows_.push_back(r);
    pivots_.push_back(piv);
    return true;
  }

  static PackedEchelon from(const Ops& ops, const Subspace& s) {
    PackedEchelon e;
    for (std::size_t i = 0; i < s.dim(); ++i) e.insert(ops, ops.pack(s.basis_vector(i)));
    return e;
  }

 private:
  std::vector<Vec> rows_;
  std::vector<std::size_t> pivots_;
};

/// Calls body(ops) with Gf2Ops for p = 2 and GfpOps otherwise.
template <class Body>
decltype(auto) with_packed_ops(PrimeField field, std::size_t n, Body&& body) {
  if (n > kMaxPackedDim) fail(ErrorCode::EnumerationTooLarge, "dimension too large for packed sweeps");
  if (field.modulus() == 2) return body(Gf2Ops(field, n));
  return body(GfpOps(field, n));
}

}  // namespace hinv::detail
