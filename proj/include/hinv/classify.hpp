#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "hinv/markedcalc.hpp"
#include "hinv/operator.hpp"
#include "hinv/options.hpp"

namespace hinv {

using BigCount = boost::multiprecision::cpp_int;

/// f(X) contained in X. Throws AmbientMismatch.
bool is_invariant(const Operator& f, const Subspace& x);

/// A basis of End_f(V) = {g : gf = fg}, read off the canonical null space of
/// the n^2 x n^2 commutation system (unknown g_ab sits at index a*n + b).
struct CommutantBasis {
  std::vector<MatrixF> basis;
  std::size_t dim() const noexcept { return basis.size(); }
};
CommutantBasis commutant_basis(const Operator& f);

// ---------------------------------------------------------------- hyperinvariance

/// g x lies outside X.
struct EndomorphismWitness {
  MatrixF g;
  VectorF x;
};

struct HyperinvariantResult {
  bool value = true;
  std::optional<EndomorphismWitness> witness;
};

/// Invariance of X under every commutant basis element (or, with
/// `full_commutant_sweep`, every commutant member). Throws NotInvariant, and
/// EnumerationTooLarge for a full sweep beyond the vector cap.
HyperinvariantResult is_hyperinvariant(const Operator& f, const Subspace& x, const SearchOptions& opts = {});

// ---------------------------------------------------------------- generator tuples and automorphisms

/// Number of generator tuples, counted chain by chain from the largest
/// exponent down: u_i ranges over Ker f^{t_i} minus the preimage of the
/// bottoms already chosen.
BigCount count_generator_tuples(const Operator& nilpotent);

/// Number of invertible commutant members. An endomorphism commuting with a
/// nilpotent f is invertible iff it acts invertibly on every graded piece
/// Ker f cap f^j V / Ker f cap f^{j+1} V; when the restriction map from the
/// commutant onto these pieces is surjective this gives
/// p^(d - rank) * prod |GL_{m_j}(p)|. Returns nullopt if it is not surjective.
std::optional<BigCount> count_invertible_commutant(const Operator& nilpotent);

/// |GL_m(p)|.
BigCount general_linear_order(unsigned p, std::size_t m);

/// Visits every generator tuple of a nilpotent operator, the canonical
/// jordan_structure output first. The visitor returns false to stop.
/// Throws EnumerationTooLarge when the tuple count exceeds `cap`.
void for_each_generator_tuple(const Operator& nilpotent, const std::function<bool(const JordanStructure&)>& visit,
                              std::uint64_t cap = std::uint64_t{1} << 24);
std::vector<JordanStructure> enumerate_generator_tuples(const Operator& nilpotent,
                                                        std::uint64_t cap = std::uint64_t{1} << 24);

/// Enumerated counts; both throw EnumerationTooLarge beyond the cap.
std::uint64_t enumerate_count_generator_tuples(const Operator& nilpotent, std::uint64_t cap);
/// Walks all p^d commutant members and counts the invertible ones.
std::uint64_t enumerate_count_invertible_commutant(const Operator& f, std::uint64_t cap);

/// The unique alpha in Aut_f(V) with alpha(f^j u_i) = f^j u~_i. Throws NotGeneratorTuple.
MatrixF theta_automorphism(const Operator& nilpotent, const JordanStructure& u, const JordanStructure& u_tilde);

/// Automorphisms generating Aut_f(V), given by their effect on the canonical
/// tuple U: u_i -> a u_i for a primitive a (p > 2), u_i -> u_i + f^j u_l for
/// l != i and max(0, t_l - t_i) <= j < t_l, and u_i -> u_i + f^j u_i for 0 < j < t_i.
std::vector<MatrixF> generating_automorphisms(const Operator& nilpotent);

// ---------------------------------------------------------------- characteristic subspaces

struct CharacteristicResult {
  bool value = true;
  /// An automorphism alpha with alpha(X) != X.
  std::optional<MatrixF> witness;
  /// False when the p > 2 shortcut through hyperinvariance decided the answer.
  bool enumerated = false;
};

/// alpha(X) = X for all alpha in Aut_f(V). Over GF(2) (or with force_bruteforce)
/// the automorphisms are enumerated per generalized eigenspace through their
/// generator tuples; otherwise characteristic subspaces coincide with
/// hyperinvariant ones and a moving generator supplies the witness.
/// Throws NotInvariant, and EnumerationTooLarge on the enumeration path.
CharacteristicResult is_characteristic(const Operator& f, const Subspace& x, const SearchOptions& opts = {});

/// is_characteristic for many subspaces in one sweep over Aut_f(V).
std::vector<CharacteristicResult> characteristic_batch(const Operator& f, std::span<const Subspace> xs,
                                                       const SearchOptions& opts = {});

/// True iff every generating automorphism maps X onto itself; with nullopt
/// meaning yes, otherwise the first moving generator.
std::optional<MatrixF> moving_generator(const Operator& nilpotent, const Subspace& x);

/// W(r, U) equals W(r, U0) for every generator tuple U. Decided by enumeration
/// when the tuple count is within `opts.automorphism_cap`, otherwise over the
/// tuples obtained from U0 by the generating automorphisms.
struct UniformityResult {
  bool value = true;
  bool enumerated = false;
  std::optional<JordanStructure> witness;
};
std::vector<UniformityResult> uniform_over_tuples(const Operator& nilpotent, std::span<const ExponentTuple> rs,
                                                  const SearchOptions& opts = {});

// ---------------------------------------------------------------- decompositions

/// X equals the sum of its intersections with the parts. Throws NotADecomposition
/// unless the parts are invariant and V is their direct sum.
bool check_distributivity(const Operator& f, const Subspace& x, std::span<const Subspace> parts);

/// The cyclic parts <u_1>, ..., <u_k> of a generator tuple.
std::vector<Subspace> cyclic_parts(const Operator& nilpotent, const JordanStructure& u);

/// For X not hyperinvariant: a generator tuple whose cyclic decomposition does
/// not split X. Tries the canonical tuple, a markedness witness and its images
/// under the generating automorphisms before walking all tuples (within cap).
std::optional<JordanStructure> nondistributive_tuple(const Operator& nilpotent, const Subspace& x,
                                                     const SearchOptions& opts = {});

/// A monotone admissible r with W(r) = X, if any.
std::optional<ExponentTuple> hyperinvariant_tuple(const Operator& nilpotent, const Subspace& x);

// ---------------------------------------------------------------- reports

struct ComponentReport {
  Scalar lambda;
  /// X cap V_lambda in component coordinates.
  Subspace local;
  Verdict marked = Verdict::No;
  bool characteristic = false;
  bool hyperinvariant = false;
  std::optional<MarkedWitness> marked_witness;
  std::optional<ExponentTuple> hyperinvariant_r;
};

struct ClassificationReport {
  bool invariant = false;
  Verdict marked = Verdict::No;
  Verdict characteristic = Verdict::No;
  Verdict hyperinvariant = Verdict::No;
  std::optional<EndomorphismWitness> endomorphism_witness;
  std::optional<MatrixF> automorphism_witness;
  bool characteristic_enumerated = false;
  std::vector<ComponentReport> components;
};

/// Splits X along the generalized eigenspaces, classifies each component
/// against its nilpotent restriction and combines the verdicts. A hyperinvariant
/// verdict that is not also characteristic and marked raises std::logic_error.
/// Throws NotInvariant, NonSplitCharPoly, ComponentSplitFailed, EnumerationTooLarge.
ClassificationReport decompose_and_classify(const Operator& f, const Subspace& x, const SearchOptions& opts = {});

}  // namespace hinv
