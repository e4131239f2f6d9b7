#include "hinv/gf.hpp"

#include <array>

namespace hinv {

namespace {

// inverse_table()[p][a] = a^{-1} mod p for every prime p <= 251.
const std::array<std::array<std::uint8_t, 256>, 256>& inverse_table() {
  static const auto table = [] {
    std::array<std::array<std::uint8_t, 256>, 256> t{};
    for (unsigned p = 2; p <= PrimeField::kMaxModulus; ++p) {
      if (!is_prime(p)) continue;
      for (unsigned a = 1; a < p; ++a) {
        for (unsigned b = 1; b < p; ++b) {
          if ((a * b) % p == 1) {
            t[p][a] = std::uint8_t(b);
            break;
          }
        }
      }
    }
    return t;
  }();
  return table;
}

void require_same_field(const Scalar& a, const Scalar& b) {
  if (a.field() != b.field()) {
    fail(ErrorCode::FieldMismatch, "operands from GF(" + std::to_string(a.field().modulus()) +
                                       ") and GF(" + std::to_string(b.field().modulus()) + ")");
  }
}

}  // namespace

bool is_prime(unsigned n) noexcept {
  if (n < 2) return false;
  for (unsigned d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

PrimeField::PrimeField(unsigned p) : p_(0) {
  if (p > kMaxModulus || !is_prime(p)) {
    fail(ErrorCode::InvalidModulus, "modulus " + std::to_string(p) + " is not a prime in [2, 251]");
  }
  p_ = std::uint8_t(p);
}

Scalar PrimeField::element(long long value) const { return Scalar(*this, value); }
Scalar PrimeField::zero() const { return Scalar(*this, 0); }
Scalar PrimeField::one() const { return Scalar(*this, 1); }

std::uint8_t PrimeField::inv(std::uint8_t a) const {
  if (a == 0) fail(ErrorCode::DivisionByZero, "inverse of zero in GF(" + std::to_string(p_) + ")");
  return inverse_table()[p_][a];
}

Scalar Scalar::inv() const {
  PrimeField f = field();
  return Scalar(f, f.inv(value_));
}

Scalar add(const Scalar& a, const Scalar& b) {
  require_same_field(a, b);
  PrimeField f = a.field();
  return Scalar(f, f.add(a.value_, b.value_));
}

Scalar sub(const Scalar& a, const Scalar& b) {
  require_same_field(a, b);
  PrimeField f = a.field();
  return Scalar(f, f.sub(a.value_, b.value_));
}

Scalar mul(const Scalar& a, const Scalar& b) {
  require_same_field(a, b);
  PrimeField f = a.field();
  return Scalar(f, f.mul(a.value_, b.value_));
}

Scalar neg(const Scalar& a) {
  PrimeField f = a.field();
  return Scalar(f, f.neg(a.value_));
}

}  // namespace hinv
