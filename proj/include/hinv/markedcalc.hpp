#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hinv/operator.hpp"

namespace hinv {

/// An integer tuple r = (r_1, ..., r_k) measured against Jordan exponents t.
class ExponentTuple {
 public:
  /// Throws LengthMismatch when r and t differ in length.
  ExponentTuple(std::vector<long long> r, std::vector<std::size_t> t);

  const std::vector<long long>& values() const noexcept { return r_; }
  const std::vector<std::size_t>& bound() const noexcept { return t_; }
  std::size_t size() const noexcept { return r_.size(); }
  long long operator[](std::size_t i) const { return r_.at(i); }

  /// 0 <= r_i <= t_i for all i.
  bool admissible() const noexcept;
  /// r is non-decreasing and so is t - r.
  bool monotone() const noexcept;

  std::string to_string() const;

  friend bool operator==(const ExponentTuple&, const ExponentTuple&) = default;

 private:
  std::vector<long long> r_;
  std::vector<std::size_t> t_;
};

bool is_admissible(const ExponentTuple& r);
bool is_monotone(const ExponentTuple& r);

/// Every admissible tuple for t, in lexicographic order (r_1 most significant).
std::vector<ExponentTuple> admissible_tuples(std::span<const std::size_t> t);

struct Fraction {
  long long num;
  long long den;
};

/// r_i = floor(c * t_i) for 0 < c < 1.
ExponentTuple scaled_tuple(std::span<const std::size_t> t, Fraction c);

/// Exponents t_1 <= ... <= t_k of a nilpotent operator from the ranks of its powers.
std::vector<std::size_t> nilpotent_exponents(const Operator& nilpotent);

/// e(u_i) = t_i for the operator's exponents and the cyclic subspaces <u_i> form a
/// direct sum equal to V (equivalently, the vectors f^{t_i - 1} u_i are independent).
bool is_generator_tuple(const Operator& nilpotent, const JordanStructure& u);

/// <f^{r_1} u_1> + ... + <f^{r_k} u_k>. Throws NotAdmissible.
Subspace build_W_rU(const Operator& nilpotent, const JordanStructure& u, const ExponentTuple& r);

/// sum_i f^{r_i} V  intersected with  Ker f^{t_i - r_i}. Throws NotAdmissible.
Subspace build_W_r(const Operator& nilpotent, const ExponentTuple& r);

/// Elementary divisor exponents expected for W(r, U) and V / W(r, U), with
/// the trivial (zero) exponents counted separately rather than stored.
struct DivisorLists {
  std::vector<std::size_t> restriction;
  std::size_t restriction_trivial = 0;
  std::vector<std::size_t> quotient;
  std::size_t quotient_trivial = 0;
};
DivisorLists expected_divisors(const ExponentTuple& r);

/// For a non-monotone admissible r, a generator tuple U' with W(r, U') != W(r, U):
/// u_{i+1} -> u_i + u_{i+1} where r_i > r_{i+1}, otherwise
/// u_i -> u_i + f^{t_{i+1} - t_i} u_{i+1} where t_i - r_i > t_{i+1} - r_{i+1}.
/// Throws NotAdmissible when r is monotone.
JordanStructure non_monotone_witness(const Operator& nilpotent, const JordanStructure& u, const ExponentTuple& r);

enum class Verdict { No, Yes, Unknown };
std::string to_string(Verdict v);

struct MarkedWitness {
  JordanStructure tuple;
  ExponentTuple r;
};

struct MarkedResult {
  Verdict verdict = Verdict::No;
  std::optional<MarkedWitness> witness;
  std::uint64_t nodes = 0;
};

/// Decides whether an invariant subspace X of a nilpotent operator equals
/// W(r, U) for some generator tuple U and admissible r.
///
/// For each admissible r (lexicographic order) whose nonzero exponents t_i - r_i
/// match the Jordan exponents of f on X, the generator u_i must lie in
/// M_i = Ker f^{t_i} intersected with the preimage of X under f^{r_i}, and the
/// chain bottoms f^{t_i - 1} u_i must be independent. The bottoms range over the
/// subspaces B_i = f^{t_i - 1} M_i, so a choice exists iff every subfamily of
/// the B_i spans at least as many dimensions as it has members (Rado's
/// condition); the depth-first search uses that test to prune.
///
/// Exceeding `budget` search nodes gives Verdict::Unknown, never No.
/// Throws NotNilpotent or NotInvariant.
MarkedResult is_marked(const Operator& nilpotent, const Subspace& x, std::uint64_t budget = 1000000);

}  // namespace hinv
