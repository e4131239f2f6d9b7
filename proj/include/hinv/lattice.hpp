#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hinv/classify.hpp"

namespace hinv {

using HasseEdge = std::pair<std::size_t, std::size_t>;

/// Result of checking a family of subspaces for closure under + and cap.
struct ClosureReport {
  bool meet_closed = true;
  bool join_closed = true;
  /// First pair (by index) whose intersection, resp. sum, is missing.
  std::optional<std::pair<std::size_t, std::size_t>> meet_failure;
  std::optional<std::pair<std::size_t, std::size_t>> join_failure;
};

/// Distinct subspaces sorted by dimension, then RREF entries, with optional
/// tags and the covering pairs (smaller, larger) of containment.
struct SubspaceLattice {
  std::vector<Subspace> elements;
  std::vector<std::vector<std::string>> labels;
  std::vector<HasseEdge> hasse_edges;
  ClosureReport closure;

  std::size_t size() const noexcept { return elements.size(); }
  std::optional<std::size_t> index_of(const Subspace& x) const;
  bool contains(const Subspace& x) const { return index_of(x).has_value(); }
  bool is_lattice() const noexcept { return closure.meet_closed && closure.join_closed; }
};

/// Builds a lattice record from arbitrary subspaces: deduplicates, sorts,
/// merges labels, computes the Hasse diagram and checks closure.
SubspaceLattice make_lattice(std::vector<Subspace> xs, std::vector<std::vector<std::string>> labels = {});

/// Covering pairs of containment among sorted, distinct subspaces.
std::vector<HasseEdge> hasse(std::span<const Subspace> elements);
ClosureReport check_closure(std::span<const Subspace> elements);

/// Names of a subspace of a nilpotent operator among 0, V, f^jV and V[f^j].
std::vector<std::string> symbolic_names(const Operator& nilpotent, const Subspace& x);

/// Hyperinvariant subspaces: W(r) over every monotone admissible r, tagged with
/// their symbolic names and every generating r. For an operator with several
/// eigenvalues the components are combined as a product.
SubspaceLattice enumerate_hinv(const Operator& f);

/// Number of subspaces of GF(p)^n (sum of Gaussian binomials), or nullopt past `cap`.
std::optional<std::uint64_t> count_all_subspaces(unsigned p, std::size_t n, std::uint64_t cap);

/// Every subspace of GF(p)^n, walked through RREF pivot profiles.
/// Throws EnumerationTooLarge when the count exceeds `cap`.
std::vector<Subspace> enumerate_all_subspaces(PrimeField field, std::size_t n, std::uint64_t cap = 100000);

std::vector<Subspace> enumerate_invariant_subspaces(const Operator& f, const SearchOptions& opts = {});

/// Characteristic subspaces, filtered from the invariant ones.
SubspaceLattice enumerate_chinv(const Operator& f, const SearchOptions& opts = {});

/// Marked invariant subspaces. Throws SearchBudgetExceeded when the markedness
/// search of some subspace runs out of budget.
std::vector<Subspace> enumerate_marked(const Operator& f, const SearchOptions& opts = {});

/// Characteristic subspaces that are not hyperinvariant. Throws WrongField for
/// p != 2 unless `any_field` is set (the result is then always empty).
std::vector<Subspace> search_characteristic_not_hyperinvariant(const Operator& f, const SearchOptions& opts = {},
                                                               bool any_field = false);

/// Graphviz text: one node per element labelled "dim=d\n<tags>", edges from
/// smaller to larger along the Hasse diagram.
std::string to_dot(const SubspaceLattice& lattice, const std::string& name = "lattice");

}  // namespace hinv
