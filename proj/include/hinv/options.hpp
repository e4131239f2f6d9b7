#pragma once

#include <cstdint>

#include "hinv/exactla.hpp"

namespace hinv {

/// Limits and switches shared by the exhaustive procedures. Exceeding a cap
/// raises EnumerationTooLarge; nothing is silently truncated.
struct SearchOptions {
  std::uint64_t vector_cap = kDefaultVectorCap;
  std::uint64_t subspace_cap = 100000;
  /// Largest |Aut_f(V)| (equivalently, number of generator tuples) walked explicitly.
  std::uint64_t automorphism_cap = std::uint64_t{1} << 24;
  /// Node budget of the markedness search.
  std::uint64_t marked_budget = 1000000;
  /// Decide characteristic subspaces by enumerating automorphisms even when p > 2.
  bool force_bruteforce = false;
  /// Test hyperinvariance against every commutant member instead of a basis.
  bool full_commutant_sweep = false;
};

}  // namespace hinv
