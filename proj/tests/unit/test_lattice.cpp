#include "doctest.h"

#include <set>

#include "hinv/lattice.hpp"
#include "operators.hpp"
#include "support.hpp"

using namespace hinv;
using testutil::vec;

namespace {

std::vector<Operator> nilpotents_by_structure(unsigned p, std::size_t max_n) {
  PrimeField f(p);
  std::vector<Operator> out;
  std::vector<std::vector<std::size_t>> parts;
  std::vector<std::size_t> cur;
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t left, std::size_t lo) {
    if (left == 0) {
      out.emplace_back(jordan_block_matrix(f, cur));
      return;
    }
    for (std::size_t s = lo; s <= left; ++s) {
      cur.push_back(s);
      rec(left - s, s);
      cur.pop_back();
    }
  };
  for (std::size_t n = 1; n <= max_n; ++n) rec(n, 1);
  return out;
}

std::set<oracle::VecSet> as_sets(const std::vector<Subspace>& xs) {
  std::set<oracle::VecSet> out;
  for (const auto& x : xs) out.insert(testutil::as_set(x));
  return out;
}

bool has_label(const SubspaceLattice& l, const Subspace& x, const std::string& tag) {
  auto i = l.index_of(x);
  if (!i) return false;
  for (const auto& s : l.labels[*i])
    if (s == tag) return true;
  return false;
}

}  // namespace

TEST_CASE("hinv of diag(0, N3)") {
  PrimeField f2(2);
  auto f = testops::split_1_3(2);
  auto l = enumerate_hinv(f);
  REQUIRE(l.size() == 6);
  const auto& m = f.matrix();
  std::vector<Subspace> expected{Subspace::zero(f2, 4), image(m),      image(m * m),
                                 kernel(m),             kernel(m * m), Subspace::whole(f2, 4)};
  for (const auto& x : expected) CHECK(l.contains(x));
  CHECK(has_label(l, image(m), "fV"));
  CHECK(has_label(l, image(m * m), "f^2V"));
  CHECK(has_label(l, kernel(m), "V[f]"));
  CHECK(has_label(l, kernel(m * m), "V[f^2]"));
  CHECK(has_label(l, Subspace::zero(f2, 4), "0"));
  CHECK(has_label(l, Subspace::whole(f2, 4), "V"));
  CHECK(l.hasse_edges.size() == 6);
  CHECK(l.is_lattice());
}

TEST_CASE("hinv of small structures") {
  PrimeField f2(2);
  auto zero = enumerate_hinv(Operator(MatrixF(f2, 2, 2)));
  CHECK(zero.size() == 2);
  CHECK(zero.hasse_edges.size() == 1);
  for (std::size_t n = 1; n <= 5; ++n) {
    std::vector<std::size_t> one{n};
    auto chain = enumerate_hinv(Operator(jordan_block_matrix(f2, one)));
    CHECK(chain.size() == n + 1);
    CHECK(chain.hasse_edges.size() == n);
  }
}

TEST_CASE("subspace enumeration") {
  PrimeField f2(2), f3(3);
  CHECK(count_all_subspaces(2, 4, 1000) == 67);
  CHECK(count_all_subspaces(3, 3, 1000) == 28);
  CHECK_FALSE(count_all_subspaces(2, 4, 66));
  auto all = enumerate_all_subspaces(f2, 4);
  CHECK(all.size() == 67);
  CHECK(std::set<Subspace>(all.begin(), all.end()).size() == 67);
  CHECK(enumerate_all_subspaces(f3, 3).size() == 28);
  CHECK(enumerate_invariant_subspaces(Operator(MatrixF(f2, 4, 4))).size() == 67);
  std::vector<std::size_t> two{2};
  auto inv = enumerate_invariant_subspaces(Operator(jordan_block_matrix(f2, two)));
  REQUIRE(inv.size() == 3);
  CHECK(inv[1] == Subspace::span(f2, 2, {vec(f2, {0, 1})}));
  bool threw = false;
  try {
    enumerate_all_subspaces(f2, 4, 10);
  } catch (const Error& e) {
    threw = e.code() == ErrorCode::EnumerationTooLarge;
  }
  CHECK(threw);
}

TEST_CASE("enumerations agree with the oracle") {
  for (unsigned p : {2u, 3u})
    for (const auto& f : nilpotents_by_structure(p, p == 2 ? 4 : 3)) {
      const int ip = int(p);
      const auto fm = testutil::to_ints(f.matrix());
      const auto invs = oracle::invariant_subspaces(ip, fm);
      const auto comm = oracle::commutant(ip, fm);
      const auto aut = oracle::automorphisms(ip, fm);
      const auto tuples = oracle::generator_tuples(ip, fm);
      std::set<oracle::VecSet> hinv, chinv, mark;
      for (const auto& s : invs) {
        if (oracle::hyperinvariant(ip, comm, s)) hinv.insert(s);
        if (oracle::characteristic(ip, aut, s)) chinv.insert(s);
        if (oracle::marked(ip, fm, tuples, s)) mark.insert(s);
      }
      CHECK(as_sets(enumerate_invariant_subspaces(f)) == invs);
      auto h = enumerate_hinv(f);
      CHECK(as_sets(h.elements) == hinv);
      CHECK(h.is_lattice());
      auto c = enumerate_chinv(f);
      CHECK(as_sets(c.elements) == chinv);
      CHECK(c.is_lattice());
      CHECK(as_sets(enumerate_marked(f)) == mark);
      auto extra = search_characteristic_not_hyperinvariant(f, {}, true);
      CHECK(extra.size() == chinv.size() - hinv.size());
      if (p == 3) CHECK(extra.empty());
    }
}

TEST_CASE("characteristic but not hyperinvariant") {
  PrimeField f2(2);
  auto f = testops::split_1_3(2);
  auto found = search_characteristic_not_hyperinvariant(f);
  CHECK(std::find(found.begin(), found.end(), testops::z_of_split_1_3(2)) != found.end());
  auto chinv = enumerate_chinv(f);
  auto hinv = enumerate_hinv(f);
  CHECK(chinv.size() > hinv.size());
  for (const auto& x : hinv.elements) CHECK(chinv.contains(x));
  CHECK(chinv.contains(testops::z_of_split_1_3(2)));

  CHECK(search_characteristic_not_hyperinvariant(Operator(MatrixF(f2, 2, 2))).empty());

  auto g = testops::split_1_3(3);
  CHECK(enumerate_chinv(g).elements == enumerate_hinv(g).elements);
  bool threw = false;
  try {
    search_characteristic_not_hyperinvariant(g);
  } catch (const Error& e) {
    threw = e.code() == ErrorCode::WrongField;
  }
  CHECK(threw);
}

TEST_CASE("marked subspaces are not closed under sums") {
  auto f = testops::blocks_1_3_2(2);
  auto marked = enumerate_marked(f);
  auto report = check_closure(marked);
  CHECK_FALSE(report.join_closed);
  REQUIRE(report.join_failure);
}

TEST_CASE("composite hinv is the product of component lattices") {
  PrimeField f2(2);
  std::vector<std::size_t> sizes{1, 3, 2};
  MatrixF m = jordan_block_matrix(f2, sizes);
  m(4, 4) = 1;
  m(5, 5) = 1;
  Operator f(m);
  auto l = enumerate_hinv(f);
  CHECK(l.size() == 6 * 3);
  CHECK(l.is_lattice());
  for (const auto& x : l.elements) CHECK(is_hyperinvariant(f, x).value);
  std::size_t count = 0;
  for (const auto& x : enumerate_invariant_subspaces(f)) count += is_hyperinvariant(f, x).value;
  CHECK(count == l.size());
}

TEST_CASE("dot output") {
  PrimeField f2(2);
  auto l = enumerate_hinv(Operator(MatrixF(f2, 2, 2)));
  auto dot = to_dot(l, "hinv");
  CHECK(dot ==
        "digraph hinv {\n  node [shape=box];\n  n0 [label=\"dim=0\\n0, W(1,1)\"];\n"
        "  n1 [label=\"dim=2\\nV, W(0,0)\"];\n  n0 -> n1;\n}\n");
  CHECK(to_dot(enumerate_hinv(testops::split_1_3(2))) == to_dot(enumerate_hinv(testops::split_1_3(2))));
}

TEST_CASE("marked subspaces are not closed under intersections") {
  PrimeField f2(2);
  auto f = testops::blocks_1_3_2(2);
  auto a = Subspace::span(f2, 6, {vec(f2, {1, 0, 0, 0, 0, 0}), vec(f2, {0, 0, 1, 0, 0, 0}), vec(f2, {0, 0, 0, 1, 0, 0})});
  auto b = Subspace::span(f2, 6, {vec(f2, {1, 0, 0, 0, 0, 1}), vec(f2, {0, 0, 1, 0, 0, 1}), vec(f2, {0, 0, 0, 1, 0, 0})});
  auto meet = intersect(a, b);
  const auto fm = testutil::to_ints(f.matrix());
  const auto tuples = oracle::generator_tuples(2, fm);
  CHECK(oracle::marked(2, fm, tuples, testutil::as_set(a)));
  CHECK(oracle::marked(2, fm, tuples, testutil::as_set(b)));
  CHECK_FALSE(oracle::marked(2, fm, tuples, testutil::as_set(meet)));
  CHECK(is_marked(f, a).verdict == Verdict::Yes);
  CHECK(is_marked(f, b).verdict == Verdict::Yes);
  CHECK(is_marked(f, meet).verdict == Verdict::No);
  CHECK_FALSE(check_closure(enumerate_marked(f)).meet_closed);
}
