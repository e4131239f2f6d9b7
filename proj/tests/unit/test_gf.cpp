#include "doctest.h"

#include "hinv/gf.hpp"

using hinv::ErrorCode;
using hinv::PrimeField;

namespace {

ErrorCode code_of(auto&& body) {
  try {
    body();
  } catch (const hinv::Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::ParseError;
}

}  // namespace

TEST_CASE("prime field construction") {
  CHECK(PrimeField(2).modulus() == 2);
  CHECK(PrimeField(251).modulus() == 251);
  CHECK(code_of([] { PrimeField(4); }) == ErrorCode::InvalidModulus);
  CHECK(code_of([] { PrimeField(1); }) == ErrorCode::InvalidModulus);
  CHECK(code_of([] { PrimeField(257); }) == ErrorCode::InvalidModulus);
}

TEST_CASE("scalar arithmetic") {
  PrimeField f2(2), f3(3), f5(5);
  CHECK((f2.element(1) + f2.element(1)).value() == 0);
  CHECK((f5.element(2) * f5.element(3)).value() == 1);
  CHECK((-f5.element(2)).value() == 3);
  CHECK(f5.element(-7).value() == 3);
  CHECK(f5.element(2).inv().value() == 3);
  CHECK(f5.element(1).inv().value() == 1);
  CHECK(code_of([&] { (void)(f2.element(1) + f3.element(1)); }) == ErrorCode::FieldMismatch);
  CHECK(code_of([&] { (void)f5.element(0).inv(); }) == ErrorCode::DivisionByZero);
}

TEST_CASE("field axioms hold exhaustively over small fields") {
  for (unsigned p : {2u, 3u, 5u}) {
    PrimeField f(p);
    for (unsigned a = 0; a < p; ++a) {
      auto x = f.element(a);
      CHECK(x + f.zero() == x);
      CHECK(x * f.one() == x);
      CHECK(x + (-x) == f.zero());
      if (a) {
        CHECK(x * x.inv() == f.one());
        CHECK(x.inv().inv() == x);
      }
      for (unsigned b = 0; b < p; ++b) {
        auto y = f.element(b);
        CHECK(x + y == y + x);
        CHECK(x * y == y * x);
        for (unsigned c = 0; c < p; ++c) {
          auto z = f.element(c);
          CHECK((x + y) + z == x + (y + z));
          CHECK((x * y) * z == x * (y * z));
          CHECK(x * (y + z) == x * y + x * z);
        }
      }
    }
  }
}

TEST_CASE("raw kernels agree with integer arithmetic") {
  for (unsigned p : {2u, 7u, 251u}) {
    PrimeField f(p);
    for (unsigned a = 0; a < p; a += (p > 20 ? 17 : 1))
      for (unsigned b = 0; b < p; b += (p > 20 ? 13 : 1)) {
        CHECK(f.add(std::uint8_t(a), std::uint8_t(b)) == (a + b) % p);
        CHECK(f.sub(std::uint8_t(a), std::uint8_t(b)) == (a + p - b) % p);
        CHECK(f.mul(std::uint8_t(a), std::uint8_t(b)) == (a * b) % p);
      }
  }
}
