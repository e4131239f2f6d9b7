#include "doctest.h"

#include <random>

#include "hinv/markedcalc.hpp"
#include "hinv/operator.hpp"
#include "operators.hpp"
#include "support.hpp"

using namespace hinv;
using testutil::vec;

namespace {

ErrorCode code_of(auto&& body) {
  try {
    body();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::ParseError;
}

// A random nilpotent operator: Jordan blocks conjugated by a random invertible matrix.
Operator random_nilpotent(PrimeField f, std::size_t n, std::mt19937_64& rng) {
  std::vector<std::size_t> sizes;
  std::size_t left = n;
  while (left) {
    std::size_t s = 1 + rng() % left;
    sizes.push_back(s);
    left -= s;
  }
  MatrixF j = jordan_block_matrix(f, sizes);
  while (true) {
    MatrixF p(f, n, n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) p(a, b) = std::uint8_t(rng() % f.modulus());
    if (auto inv = p.inverse()) return Operator(p * j * *inv);
  }
}

}  // namespace

TEST_CASE("eigenvalues") {
  PrimeField f2(2), f3(3);
  auto ev = eigenvalues(testops::blocks_2_3(2));
  REQUIRE(ev.size() == 1);
  CHECK(ev[0].lambda.value() == 0);
  CHECK(ev[0].multiplicity == 5);
  // Companion matrix of x^2 + x + 1.
  CHECK(code_of([&] { eigenvalues(Operator(MatrixF::from_ints(f2, {{0, 1}, {1, 1}}))); }) ==
        ErrorCode::NonSplitCharPoly);
  auto id = eigenvalues(Operator(MatrixF::identity(f3, 2)));
  REQUIRE(id.size() == 1);
  CHECK(id[0].lambda.value() == 1);
  CHECK(id[0].multiplicity == 2);
}

TEST_CASE("generalized eigenspace decomposition") {
  PrimeField f3(3);
  std::vector<long long> d{1, 0};
  auto comps = decompose(Operator(MatrixF::diagonal(f3, d)));
  REQUIRE(comps.size() == 2);
  CHECK(comps[0].lambda.value() == 0);
  CHECK(comps[0].space == Subspace::span(f3, 2, {vec(f3, {0, 1})}));
  CHECK(comps[1].space == Subspace::span(f3, 2, {vec(f3, {1, 0})}));
  auto single = decompose(testops::split_1_3(2));
  REQUIRE(single.size() == 1);
  CHECK(single[0].space.is_whole());
  CHECK(single[0].restriction.is_nilpotent());

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    // Two shifted nilpotent blocks, mixed by a conjugation.
    auto a = random_nilpotent(f3, 2, rng);
    auto b = random_nilpotent(f3, 3, rng);
    MatrixF m(f3, 5, 5);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) m(i, j) = a.matrix()(i, j);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) m(2 + i, 2 + j) = b.matrix()(i, j);
    for (std::size_t i = 2; i < 5; ++i) m(i, i) = f3.add(m(i, i), 2);
    Operator op(m);
    auto parts = decompose(op);
    REQUIRE(parts.size() == 2);
    Subspace total = Subspace::zero(f3, 5);
    for (const auto& c : parts) {
      CHECK(is_invariant_subspace(op, c.space));
      CHECK(c.restriction.is_nilpotent());
      total = sum(total, c.space);
    }
    CHECK(total.is_whole());
  }
}

TEST_CASE("Jordan structures of the basic examples") {
  PrimeField f2(2);
  auto a = jordan_structure(testops::split_1_3(2));
  CHECK(a.exponents == std::vector<std::size_t>{1, 3});
  CHECK(a.generators == std::vector<VectorF>{vec(f2, {1, 0, 0, 0}), vec(f2, {0, 1, 0, 0})});
  auto b = jordan_structure(testops::blocks_2_3(2));
  CHECK(b.exponents == std::vector<std::size_t>{2, 3});
  CHECK(b.generators == std::vector<VectorF>{vec(f2, {1, 0, 0, 0, 0}), vec(f2, {0, 0, 1, 0, 0})});
  auto c = jordan_structure(Operator(MatrixF(f2, 2, 2)));
  CHECK(c.exponents == std::vector<std::size_t>{1, 1});
  CHECK(code_of([&] { jordan_structure(Operator(MatrixF::identity(f2, 2))); }) == ErrorCode::NotNilpotent);
}

TEST_CASE("exponent and height") {
  PrimeField f2(2);
  auto f = testops::split_1_3(2);
  CHECK(exponent(f, vec(f2, {1, 0, 1, 0})) == 2);
  CHECK(exponent(f, vec(f2, {0, 1, 0, 0})) == 3);
  CHECK(exponent(f, vec(f2, {0, 0, 0, 0})) == 0);
  CHECK(std::holds_alternative<Bottom>(height(f, vec(f2, {0, 0, 0, 0}))));
  CHECK(std::get<std::size_t>(height(f, vec(f2, {1, 0, 1, 0}))) == 0);
  CHECK(std::get<std::size_t>(height(f, vec(f2, {0, 0, 0, 1}))) == 2);
  CHECK(std::get<std::size_t>(height(f, vec(f2, {0, 0, 1, 0}))) == 1);
  CHECK(to_string(height(f, vec(f2, {0, 0, 0, 0}))) == "-inf");
}

TEST_CASE("restriction and quotient structures") {
  PrimeField f2(2);
  auto f = testops::split_1_3(2);
  auto z = testops::z_of_split_1_3(2);
  CHECK(restriction_structure(f, z).structure.exponents == std::vector<std::size_t>{2});
  CHECK(restriction_structure(f, Subspace::whole(f2, 4)).structure.exponents ==
        jordan_structure(f).exponents);
  CHECK(restriction_structure(f, kernel(f.matrix())).structure.exponents == std::vector<std::size_t>{1, 1});
  CHECK(quotient_structure(f, Subspace::zero(f2, 4)) == std::vector<std::size_t>{1, 3});
  CHECK(quotient_structure(f, Subspace::whole(f2, 4)).empty());
  CHECK(quotient_structure(f, image(f.matrix())) == std::vector<std::size_t>{1, 1});
  CHECK(code_of([&] { restriction_structure(f, Subspace::span(f2, 4, {vec(f2, {0, 1, 0, 0})})); }) ==
        ErrorCode::NotInvariant);
}

TEST_CASE("structural invariants on random nilpotent operators") {
  std::mt19937_64 rng(17);
  for (unsigned p : {2u, 3u}) {
    PrimeField f(p);
    for (int trial = 0; trial < 25; ++trial) {
      const std::size_t n = 1 + rng() % 5;
      auto op = random_nilpotent(f, n, rng);
      auto js = jordan_structure(op);
      std::size_t total = 0;
      for (std::size_t i = 0; i < js.size(); ++i) {
        total += js.exponents[i];
        CHECK(exponent(op, js.generators[i]) == js.exponents[i]);
        if (i) CHECK(js.exponents[i - 1] <= js.exponents[i]);
      }
      CHECK(total == n);
      CHECK(js.size() == kernel(op.matrix()).dim());
      CHECK(jordan_basis_matrix(op, js).rank() == n);
      CHECK(js.exponents == oracle::block_sizes(int(p), testutil::to_ints(op.matrix())));
      CHECK(jordan_structure(op) == js);
      for (const auto& x : enumerate_vectors(Subspace::whole(f, n))) {
        const std::size_t e = exponent(op, x);
        const auto fx = op.apply(x);
        CHECK(exponent(op, fx) == (e ? e - 1 : 0));
        if (e >= 2) CHECK(std::get<std::size_t>(height(op, fx)) >= std::get<std::size_t>(height(op, x)) + 1);
      }
    }
  }
}

TEST_CASE("restriction and quotient exponents of W(r, U)") {
  std::mt19937_64 rng(23);
  for (unsigned p : {2u, 3u}) {
    PrimeField f(p);
    for (int trial = 0; trial < 20; ++trial) {
      auto op = random_nilpotent(f, 1 + rng() % 5, rng);
      auto js = jordan_structure(op);
      for (const auto& r : admissible_tuples(js.exponents)) {
        auto w = build_W_rU(op, js, r);
        auto expected = expected_divisors(r);
        CHECK(restriction_structure(op, w).structure.exponents == expected.restriction);
        CHECK(quotient_structure(op, w) == expected.quotient);
      }
    }
  }
}
