#include "doctest.h"

#include <random>

#include "hinv/exactla.hpp"
#include "operators.hpp"
#include "support.hpp"

using namespace hinv;
using testutil::as_set;
using testutil::vec;

namespace {

MatrixF random_matrix(PrimeField f, std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  MatrixF m(f, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = std::uint8_t(rng() % f.modulus());
  return m;
}

Subspace random_subspace(PrimeField f, std::size_t n, std::mt19937_64& rng) {
  return Subspace::row_space(random_matrix(f, rng() % (n + 1), n, rng));
}

bool is_canonical(const MatrixF& m) {
  std::size_t last = 0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::size_t piv = 0;
    while (piv < m.cols() && m(i, piv) == 0) ++piv;
    if (piv == m.cols() || m(i, piv) != 1) return false;
    if (i && piv <= last) return false;
    for (std::size_t k = 0; k < m.rows(); ++k)
      if (k != i && m(k, piv) != 0) return false;
    last = piv;
  }
  return true;
}

}  // namespace

TEST_CASE("rref basics") {
  PrimeField f2(2);
  CHECK(rref(MatrixF::identity(f2, 4)) == MatrixF::identity(f2, 4));
  CHECK(rref(MatrixF(f2, 3, 4)).rows() == 0);
  auto m = MatrixF::from_ints(f2, {{1, 0, 1, 0}, {0, 0, 0, 1}});
  CHECK(rref(m) == m);
  auto messy = MatrixF::from_ints(PrimeField(5), {{0, 2, 4}, {3, 1, 0}, {3, 3, 4}});
  auto r = rref(messy);
  CHECK(is_canonical(r));
  CHECK(r.rows() == 2);
}

TEST_CASE("bit-packed and generic reductions agree") {
  PrimeField f2(2);
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t rows = rng() % 9, cols = 1 + rng() % 140;
    auto m = random_matrix(f2, rows, cols, rng);
    auto a = detail::rref_generic(m);
    auto b = detail::rref_gf2(m);
    CHECK(a.reduced == b.reduced);
    CHECK(a.pivots == b.pivots);
  }
}

TEST_CASE("kernel and image of diag(0, N3)") {
  PrimeField f2(2);
  auto f = testops::split_1_3(2);
  CHECK(kernel(f.matrix()) == Subspace::span(f2, 4, {vec(f2, {1, 0, 0, 0}), vec(f2, {0, 0, 0, 1})}));
  CHECK(image(f.matrix()) == Subspace::span(f2, 4, {vec(f2, {0, 0, 1, 0}), vec(f2, {0, 0, 0, 1})}));
  CHECK(kernel(MatrixF::identity(f2, 4)).is_zero());
}

TEST_CASE("intersections with the two cyclic summands") {
  PrimeField f2(2);
  auto f = testops::split_1_3(2);
  auto z = testops::z_of_split_1_3(2);
  auto v1 = Subspace::span(f2, 4, {vec(f2, {1, 0, 0, 0})});
  auto v2 = cyclic_subspace(f, vec(f2, {0, 1, 0, 0}));
  CHECK(intersect(z, v1).is_zero());
  CHECK(intersect(z, v2) == Subspace::span(f2, 4, {vec(f2, {0, 0, 0, 1})}));
  CHECK(sum(z, z) == z);
}

TEST_CASE("membership in Z") {
  PrimeField f2(2);
  auto z = testops::z_of_split_1_3(2);
  CHECK_FALSE(z.contains(vec(f2, {1, 0, 0, 0})));
  CHECK(z.contains(vec(f2, {1, 0, 1, 1})));
  CHECK(Subspace::zero(f2, 4).is_subspace_of(z));
  auto vs = enumerate_vectors(z);
  std::set<oracle::Vec> got;
  for (const auto& v : vs) got.insert(testutil::to_ints(v));
  CHECK(vs.size() == 4);
  CHECK(got == oracle::VecSet{{0, 0, 0, 0}, {1, 0, 1, 0}, {1, 0, 1, 1}, {0, 0, 0, 1}});
}

TEST_CASE("vector enumeration contract") {
  PrimeField f2(2), f3(3);
  CHECK(enumerate_vectors(Subspace::zero(f3, 3)).size() == 1);
  CHECK(enumerate_vectors(Subspace::whole(f3, 3)).size() == 27);
  bool threw = false;
  try {
    enumerate_vectors(Subspace::whole(f2, 21));
  } catch (const Error& e) {
    threw = e.code() == ErrorCode::EnumerationTooLarge;
  }
  CHECK(threw);
  // First coordinate runs fastest.
  auto vs = enumerate_vectors(Subspace::whole(f3, 2));
  CHECK(testutil::to_ints(vs[1]) == oracle::Vec{1, 0});
  CHECK(testutil::to_ints(vs[3]) == oracle::Vec{0, 1});
}

TEST_CASE("ambient mismatch is reported") {
  PrimeField f2(2);
  bool threw = false;
  try {
    sum(Subspace::whole(f2, 2), Subspace::whole(f2, 3));
  } catch (const Error& e) {
    threw = e.code() == ErrorCode::AmbientMismatch;
  }
  CHECK(threw);
}

TEST_CASE("subspace operations match the brute-force oracle") {
  std::mt19937_64 rng(11);
  for (unsigned p : {2u, 3u, 5u}) {
    PrimeField f(p);
    const std::size_t n = p == 5 ? 3 : 4;
    for (int trial = 0; trial < 40; ++trial) {
      auto a = random_subspace(f, n, rng);
      auto b = random_subspace(f, n, rng);
      auto m = random_matrix(f, n, n, rng);
      const int ip = int(p);
      auto sa = as_set(a), sb = as_set(b);
      CHECK(as_set(sum(a, b)) == oracle::join(ip, n, sa, sb));
      CHECK(as_set(intersect(a, b)) == oracle::meet(sa, sb));
      CHECK(a.dim() + b.dim() == sum(a, b).dim() + intersect(a, b).dim());
      auto im = testutil::to_ints(m);
      CHECK(as_set(kernel(m)) == oracle::kernel_set(ip, im, n));
      CHECK(as_set(image(m)) == oracle::image_set(ip, im, n));
      CHECK(as_set(map_subspace(m, a)) == oracle::map_set(ip, im, sa));
      oracle::VecSet pre;
      for (const auto& v : oracle::all_vectors(ip, n))
        if (sb.count(oracle::apply(ip, im, v))) pre.insert(v);
      CHECK(as_set(preimage(m, b)) == pre);
      CHECK(kernel(m).dim() + m.rank() == n);
      CHECK(is_canonical(sum(a, b).basis()));
      CHECK(is_canonical(intersect(a, b).basis()));
      CHECK(Subspace::row_space(sum(a, b).basis()) == sum(a, b));
      CHECK(a.is_subspace_of(sum(a, b)) == true);
      CHECK(maps_into(m, a, b) == oracle::subset(oracle::map_set(ip, im, sa), sb));
    }
  }
}

TEST_CASE("kernels of powers grow and images shrink") {
  std::mt19937_64 rng(3);
  PrimeField f(3);
  for (int trial = 0; trial < 20; ++trial) {
    auto m = random_matrix(f, 4, 4, rng);
    for (std::size_t a = 0; a < 4; ++a) {
      CHECK(kernel(m.pow(a)).is_subspace_of(kernel(m.pow(a + 1))));
      CHECK(image(m.pow(a + 1)).is_subspace_of(image(m.pow(a))));
    }
  }
}

TEST_CASE("matrix inverse and determinant") {
  PrimeField f(5);
  auto m = MatrixF::from_ints(f, {{1, 2}, {3, 4}});
  CHECK(m.determinant().value() == 3);  // 4 - 6 = -2
  auto inv = m.inverse();
  REQUIRE(inv);
  CHECK(*inv * m == MatrixF::identity(f, 2));
  CHECK_FALSE(MatrixF::from_ints(f, {{1, 2}, {2, 4}}).inverse());
}
