// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "hinv/verify.hpp"

using namespace hinv;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& title, double limit_s, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (secs > limit_s) {
    o.ok = false;
    o.detail += " over the time limit";
  }
  if (!o.ok) ++failures;
  std::printf("%s %d %s (%.2f s, limit %.0f s)%s%s\n", o.ok ? "PASS" : "FAIL", id, title.c_str(), secs, limit_s,
              o.detail.empty() ? "" : ": ", o.detail.c_str());
  std::fflush(stdout);
}

Operator blocks(unsigned p, std::vector<std::size_t> sizes) { return Operator(jordan_block_matrix(PrimeField(p), sizes)); }

VectorF vec(unsigned p, std::initializer_list<long long> xs) { return VectorF::from_ints(PrimeField(p), xs); }

void partitions(std::size_t n, std::size_t lo, std::vector<std::size_t>& cur,
                std::vector<std::vector<std::size_t>>& out) {
  if (n == 0) out.push_back(cur);
  for (std::size_t s = lo; s <= n; ++s) {
    cur.push_back(s);
    partitions(n - s, s, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<std::size_t>> partitions(std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  partitions(n, 1, cur, out);
  return out;
}

/// Every nilpotent n x n matrix over GF(p), found by walking all matrices.
std::vector<Operator> all_nilpotent(unsigned p, std::size_t n) {
  PrimeField field(p);
  std::vector<Operator> out;
  MatrixF m(field, n, n);
  const std::size_t cells = n * n;
  while (true) {
    Operator f(m);
    if (f.is_nilpotent()) out.push_back(std::move(f));
    std::size_t c = 0;
    for (; c < cells; ++c) {
      auto& e = m(c / n, c % n);
      if (++e < p) break;
      e = 0;
    }
    if (c == cells) break;
  }
  return out;
}

// Criteria 6 and 8 share one sweep.
struct RelationSweep {
  std::size_t operators = 0, subspaces = 0, equivalence_violations = 0, containment_violations = 0;
  std::string first_violation;
};

RelationSweep relation_sweep() {
  RelationSweep s;
  for (unsigned p : {2u, 3u})
    for (std::size_t n = 1; n <= (p == 2 ? 4u : 3u); ++n) {
      SearchOptions opts;
      opts.force_bruteforce = true;
      for (const Operator& f : all_nilpotent(p, n)) {
        ++s.operators;
        const auto invs = enumerate_invariant_subspaces(f, opts);
        const auto chars = characteristic_batch(f, invs, opts);
        for (std::size_t i = 0; i < invs.size(); ++i) {
          ++s.subspaces;
          const bool hyper = is_hyperinvariant(f, invs[i]).value;
          const auto marked = is_marked(f, invs[i]).verdict;
          if (marked == Verdict::Unknown) throw std::runtime_error("markedness undecided");
          const bool mark = marked == Verdict::Yes;
          const bool chr = chars[i].value;
          if (hyper != (chr && mark)) {
            ++s.equivalence_violations;
            if (s.first_violation.empty()) s.first_violation = f.matrix().to_string() + " " + invs[i].to_string();
          }
          if (hyper && !(chr && mark)) ++s.containment_violations;
        }
      }
    }
  return s;
}

}  // namespace

int main() {
  const PrimeField f2(2);

  criterion(1, "Z = <e1+e3> under diag(0,N3) over GF(2) is invariant and characteristic, not hyperinvariant, not marked",
            1, [&] {
              const Operator f = blocks(2, {1, 3});
              const Subspace z = cyclic_subspace(f, vec(2, {1, 0, 1, 0}));
              const auto rep = decompose_and_classify(f, z);
              Outcome o;
              o.ok = rep.invariant && rep.characteristic == Verdict::Yes && rep.hyperinvariant == Verdict::No &&
                     rep.marked == Verdict::No && rep.endomorphism_witness.has_value();
              if (o.ok) {
                const auto& w = *rep.endomorphism_witness;
                const VectorF gz = w.g * w.x;
                o.ok = w.g * w.g == w.g && w.g * f.matrix() == f.matrix() * w.g && z.contains(w.x) &&
                       gz == vec(2, {1, 0, 0, 0}) && !z.contains(gz);
                o.detail = "g = " + w.g.to_string() + ", gz = " + cli::format_vector(gz);
              }
              return o;
            });

  criterion(2, "Hinv of diag(0,N3) is {0, fV, f^2V, V[f], V[f^2], V}; Chinv is larger over GF(2), equal over GF(3)", 5,
            [&] {
              const Operator f = blocks(2, {1, 3});
              const MatrixF& m = f.matrix();
              const std::set<Subspace> expected{Subspace::zero(f2, 4), image(m), image(m * m), kernel(m),
                                                kernel(m * m), Subspace::whole(f2, 4)};
              const auto hinv = enumerate_hinv(f);
              const auto chinv = enumerate_chinv(f);
              const Subspace z = cyclic_subspace(f, vec(2, {1, 0, 1, 0}));
              Outcome o;
              o.ok = expected.size() == 6 && hinv.size() == 6 &&
                     std::set<Subspace>(hinv.elements.begin(), hinv.elements.end()) == expected &&
                     chinv.size() > hinv.size() && chinv.contains(z) && !hinv.contains(z);
              for (const auto& x : hinv.elements) o.ok = o.ok && chinv.contains(x);
              const Operator g = blocks(3, {1, 3});
              SearchOptions brute;
              brute.force_bruteforce = true;
              const auto chinv3 = enumerate_chinv(g, brute);
              const auto hinv3 = enumerate_hinv(g);
              o.ok = o.ok && chinv3.elements == hinv3.elements;
              o.detail = "|Hinv| = " + std::to_string(hinv.size()) + ", |Chinv| = " + std::to_string(chinv.size()) +
                         " over GF(2); |Chinv| = |Hinv| = " + std::to_string(hinv3.size()) + " over GF(3)";
              return o;
            });

  criterion(3, "W(r,U) for diag(N2,N3), r = (1,0) depends on U; monotone r give W(r,U) = W(r) for every U", 60, [&] {
    const Operator f = blocks(2, {2, 3});
    const ExponentTuple r({1, 0}, {2, 3});
    const JordanStructure u{{2, 3}, {vec(2, {1, 0, 0, 0, 0}), vec(2, {0, 0, 1, 0, 0})}};
    const JordanStructure ut{{2, 3}, {vec(2, {1, 0, 0, 0, 0}), vec(2, {1, 0, 1, 0, 0})}};
    Outcome o;
    o.ok = build_W_rU(f, u, r) != build_W_rU(f, ut, r) && !is_monotone(r);
    const auto tuples = enumerate_generator_tuples(f);
    std::size_t monotone = 0;
    for (const auto& q : admissible_tuples(std::vector<std::size_t>{2, 3})) {
      if (!q.monotone()) continue;
      ++monotone;
      const Subspace w = build_W_r(f, q);
      for (const auto& t : tuples) o.ok = o.ok && build_W_rU(f, t, q) == w;
    }
    o.detail = std::to_string(monotone) + " monotone r over " + std::to_string(tuples.size()) + " generator tuples";
    return o;
  });

  criterion(4, "under diag(0,N3,N2) over GF(2), Z1 and Z2 are marked and Z1+Z2 is not", 10, [&] {
    const Operator f = blocks(2, {1, 3, 2});
    const Subspace z1 = cyclic_subspace(f, vec(2, {0, 0, 0, 0, 1, 0}));
    const Subspace z2 = cyclic_subspace(f, vec(2, {1, 0, 1, 0, 1, 0}));
    Outcome o;
    o.ok = is_marked(f, z1).verdict == Verdict::Yes && is_marked(f, z2).verdict == Verdict::Yes &&
           is_marked(f, sum(z1, z2)).verdict == Verdict::No;
    return o;
  });

  criterion(5, "uniformity, monotonicity, W(r,U) = W(r), characteristic and hyperinvariant agree for n <= 5", 300, [&] {
    VerifyReport report;
    std::size_t structures = 0, by_generators = 0;
    const SearchOptions opts;
    for (unsigned p : {2u, 3u})
      for (std::size_t n = 1; n <= 5; ++n)
        for (const auto& t : partitions(n)) {
          const Operator f = blocks(p, t);
          ++structures;
          if (count_generator_tuples(f) > opts.automorphism_cap) ++by_generators;
          check_tuple_equivalences(f, opts, report);
        }
    const auto& tally = report.property("tuple conditions agree");
    Outcome o;
    o.ok = report.ok() && tally.passed > 0;
    o.detail = std::to_string(structures) + " structures, " + std::to_string(tally.passed) + " tuples r, " +
               std::to_string(tally.failed) + " violations; " + std::to_string(by_generators) +
               " structures decided through the generating automorphisms";
    if (!tally.witnesses.empty()) o.detail += "; " + tally.witnesses.front();
    return o;
  });

  RelationSweep sweep;
  criterion(6, "hyperinvariant = characteristic and marked on every invariant subspace (n <= 4 over GF(2), n <= 3 over GF(3))",
            300, [&] {
              sweep = relation_sweep();
              Outcome o;
              o.ok = sweep.equivalence_violations == 0 && sweep.subspaces > 0;
              o.detail = std::to_string(sweep.operators) + " nilpotent matrices, " + std::to_string(sweep.subspaces) +
                         " invariant subspaces, " + std::to_string(sweep.equivalence_violations) + " violations";
              if (!sweep.first_violation.empty()) o.detail += "; " + sweep.first_violation;
              return o;
            });

  criterion(7, "invertible commutant members and generator tuples are equinumerous for p^n <= 2^12", 120, [&] {
    std::size_t structures = 0, enumerated = 0, violations = 0;
    std::string first;
    const std::uint64_t budget = std::uint64_t{1} << 20;
    for (unsigned p = 2; p <= 251; ++p) {
      if (!is_prime(p)) continue;
      for (std::size_t n = 1; bounded_power(p, n, 4096); ++n)
        for (const auto& t : partitions(n)) {
          const Operator f = blocks(p, t);
          ++structures;
          const BigCount tuples = count_generator_tuples(f);
          const auto units = count_invertible_commutant(f);
          bool ok = units && *units == tuples;
          if (tuples <= budget && bounded_power(p, commutant_basis(f).dim(), budget)) {
            ++enumerated;
            ok = ok && enumerate_count_generator_tuples(f, budget) == tuples &&
                 enumerate_count_invertible_commutant(f, budget) == tuples;
          }
          if (!ok) {
            ++violations;
            if (first.empty()) first = "p = " + std::to_string(p) + ", n = " + std::to_string(n);
          }
        }
    }
    Outcome o;
    o.ok = violations == 0;
    o.detail = std::to_string(structures) + " structures, " + std::to_string(enumerated) +
               " also enumerated, " + std::to_string(violations) + " violations" + (first.empty() ? "" : "; " + first);
    return o;
  });

  criterion(8, "Hinv lies in Chinv and Mark; Mark is not inside Chinv and Chinv is not inside Mark over GF(2)", 300, [&] {
    if (sweep.operators == 0) sweep = relation_sweep();
    const Operator zero(MatrixF(f2, 2, 2));
    const Subspace x = Subspace::span(f2, 2, {vec(2, {1, 0})});
    const bool marked_not_char =
        is_marked(zero, x).verdict == Verdict::Yes && !is_characteristic(zero, x).value;
    const Operator f = blocks(2, {1, 3});
    const Subspace z = cyclic_subspace(f, vec(2, {1, 0, 1, 0}));
    const bool char_not_marked = is_characteristic(f, z).value && is_marked(f, z).verdict == Verdict::No;
    Outcome o;
    o.ok = sweep.containment_violations == 0 && sweep.subspaces > 0 && marked_not_char && char_not_marked;
    o.detail = std::to_string(sweep.containment_violations) + " containment violations over " +
               std::to_string(sweep.subspaces) + " subspaces";
    return o;
  });

  criterion(9, "the verify suite rejects a fixture that labels Z hyperinvariant, with a witness", 10, [&] {
    std::ostringstream out, err;
    const int code =
        cli::run({"verify", "--input", std::string(HINV_FIXTURES) + "/corrupted_z_hinv.json"}, out, err);
    Outcome o;
    o.ok = code == 1 && out.str().find("witness: Z expected hyperinvariant") != std::string::npos &&
           out.str().find("outside Z") != std::string::npos;
    o.detail = "exit code " + std::to_string(code);
    return o;
  });

  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
