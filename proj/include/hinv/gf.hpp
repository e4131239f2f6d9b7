#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include "hinv/errors.hpp"

namespace hinv {

class Scalar;

/// The prime field GF(p), 2 <= p <= 251. A field is identified by its modulus,
/// so two PrimeField values with the same p are interchangeable.
class PrimeField {
 public:
  static constexpr unsigned kMaxModulus = 251;

  explicit PrimeField(unsigned p);

  unsigned modulus() const noexcept { return p_; }
  unsigned size() const noexcept { return p_; }

  Scalar element(long long value) const;
  Scalar zero() const;
  Scalar one() const;

  // Raw residue kernels used by the matrix code. Operands must be reduced.
  std::uint8_t add(std::uint8_t a, std::uint8_t b) const noexcept {
    unsigned s = unsigned(a) + b;
    return std::uint8_t(s >= p_ ? s - p_ : s);
  }
  std::uint8_t sub(std::uint8_t a, std::uint8_t b) const noexcept {
    return std::uint8_t(a >= b ? a - b : a + p_ - b);
  }
  std::uint8_t neg(std::uint8_t a) const noexcept { return std::uint8_t(a == 0 ? 0 : p_ - a); }
  std::uint8_t mul(std::uint8_t a, std::uint8_t b) const noexcept {
    return std::uint8_t((unsigned(a) * b) % p_);
  }
  /// Throws DivisionByZero for a == 0.
  std::uint8_t inv(std::uint8_t a) const;
  std::uint8_t reduce(long long v) const noexcept {
    long long r = v % static_cast<long long>(p_);
    return std::uint8_t(r < 0 ? r + p_ : r);
  }

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint8_t p_;
};

bool is_prime(unsigned n) noexcept;

/// A fully reduced residue tagged with its modulus.
class Scalar {
 public:
  Scalar(const PrimeField& field, long long value)
      : value_(field.reduce(value)), modulus_(std::uint8_t(field.modulus())) {}

  unsigned value() const noexcept { return value_; }
  PrimeField field() const { return PrimeField(modulus_); }
  bool is_zero() const noexcept { return value_ == 0; }

  Scalar inv() const;

  friend Scalar add(const Scalar& a, const Scalar& b);
  friend Scalar sub(const Scalar& a, const Scalar& b);
  friend Scalar mul(const Scalar& a, const Scalar& b);
  friend Scalar neg(const Scalar& a);

  friend Scalar operator+(const Scalar& a, const Scalar& b) { return add(a, b); }
  friend Scalar operator-(const Scalar& a, const Scalar& b) { return sub(a, b); }
  friend Scalar operator*(const Scalar& a, const Scalar& b) { return mul(a, b); }
  friend Scalar operator/(const Scalar& a, const Scalar& b) { return mul(a, b.inv()); }
  friend Scalar operator-(const Scalar& a) { return neg(a); }

  friend bool operator==(const Scalar&, const Scalar&) = default;

  std::string to_string() const { return std::to_string(value_); }

 private:
  std::uint8_t value_;
  std::uint8_t modulus_;
};

inline Scalar inv(const Scalar& a) { return a.inv(); }

}  // namespace hinv
