#pragma once

#include <cstdint>
#include <functional>
#include <deque>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "hinv/lattice.hpp"

namespace hinv {

/// Pass/fail counts of one property, with the first few failure witnesses.
struct PropertyTally {
  std::string name;
  std::uint64_t passed = 0;
  std::uint64_t failed = 0;
  std::vector<std::string> witnesses;

  void record(bool ok, const std::function<std::string()>& witness);
};

struct VerifyReport {
  std::deque<PropertyTally> properties;
  /// Observations that are gathered but not asserted.
  std::vector<std::string> notes;

  PropertyTally& property(const std::string& name);
  void merge(const VerifyReport& other);
  bool ok() const;
  std::uint64_t failures() const;
  std::string to_text() const;
};

/// Characteristic test that enumerates Aut_f(V) within `opts.automorphism_cap`
/// and otherwise checks the generating automorphisms, which is equally exact.
bool characteristic_exact(const Operator& nilpotent, const Subspace& x, const SearchOptions& opts = {});

/// For every admissible r: uniformity of W(r, U) over generator tuples, monotonicity
/// of r, W(r, U0) = W(r), and W(r, U0) being characteristic, resp. hyperinvariant,
/// all agree.
void check_tuple_equivalences(const Operator& nilpotent, const SearchOptions& opts, VerifyReport& report);

/// Restriction and quotient exponents of W(r, U0) against the predicted lists.
void check_divisor_lists(const Operator& nilpotent, VerifyReport& report);

/// Generator tuples and invertible commutant members are equinumerous; exact
/// counts always, enumeration when within `opts.automorphism_cap`.
void check_counts(const Operator& nilpotent, const SearchOptions& opts, VerifyReport& report);

/// Tuples r with r_i = floor(c t_i) are monotone for 0 < c < 1.
void check_scaled_tuples(const Operator& nilpotent, VerifyReport& report);

/// Over every invariant subspace: hyperinvariant iff characteristic and marked,
/// the containments Hinv in Chinv and Mark, the Hinv enumeration against the
/// filter, closure of Hinv and Chinv, Chinv = Hinv for p > 2, and the
/// distributivity criterion. Notes whether Mark is closed under intersections.
void check_subspace_relations(const Operator& f, const SearchOptions& opts, VerifyReport& report);

/// All of the above, per eigenvalue component where a nilpotent operator is needed.
VerifyReport verify_operator(const Operator& f, const SearchOptions& opts = {});

/// P J P^{-1} for a random Jordan matrix J with eigenvalues in GF(p) and a random invertible P.
Operator random_split_operator(PrimeField field, std::size_t n, std::mt19937_64& rng);

VerifyReport verify_random(unsigned p, std::size_t n, std::size_t count, std::uint64_t seed,
                           const SearchOptions& opts = {});

/// Flags asserted for a named subspace: invariant, marked, characteristic, hyperinvariant.
using Expectations = std::map<std::string, bool>;

/// Compares the classification of X with the asserted flags; each mismatch is a
/// failure carrying the witness that refutes the assertion.
void check_expectations(const Operator& f, const std::string& name, const Subspace& x, const Expectations& expect,
                        const SearchOptions& opts, VerifyReport& report);

}  // namespace hinv
