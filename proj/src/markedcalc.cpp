#include "hinv/markedcalc.hpp"

#include "hinv/detail/lifter.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

namespace hinv {

// ---------------------------------------------------------------- tuples

ExponentTuple::ExponentTuple(std::vector<long long> r, std::vector<std::size_t> t)
    : r_(std::move(r)), t_(std::move(t)) {
  if (r_.size() != t_.size()) {
    fail(ErrorCode::LengthMismatch,
         "tuple of length " + std::to_string(r_.size()) + " against " + std::to_string(t_.size()) + " exponents");
  }
}

bool ExponentTuple::admissible() const noexcept {
  for (std::size_t i = 0; i < r_.size(); ++i) {
    if (r_[i] < 0 || r_[i] > static_cast<long long>(t_[i])) return false;
  }
  return true;
}

bool ExponentTuple::monotone() const noexcept {
  for (std::size_t i = 0; i + 1 < r_.size(); ++i) {
    if (r_[i] > r_[i + 1]) return false;
    const long long gap_here = static_cast<long long>(t_[i]) - r_[i];
    const long long gap_next = static_cast<long long>(t_[i + 1]) - r_[i + 1];
    if (gap_here > gap_next) return false;
  }
  return true;
}

std::string ExponentTuple::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < r_.size(); ++i) {
    if (i) os << ',';
    os << r_[i];
  }
  os << ')';
  return os.str();
}

bool is_admissible(const ExponentTuple& r) { return r.admissible(); }
bool is_monotone(const ExponentTuple& r) { return r.monotone(); }

std::vector<ExponentTuple> admissible_tuples(std::span<const std::size_t> t) {
  std::vector<std::size_t> bound(t.begin(), t.end());
  std::vector<ExponentTuple> out;
  std::vector<long long> r(t.size(), 0);
  while (true) {
    out.emplace_back(r, bound);
    // Increment with the last entry fastest so the output is lexicographic.
    std::size_t i = t.size();
    while (i > 0) {
      --i;
      if (r[i] < static_cast<long long>(t[i])) {
        ++r[i];
        break;
      }
      r[i] = 0;
      if (i == 0) return out;
    }
    if (t.empty()) return out;
  }
}

ExponentTuple scaled_tuple(std::span<const std::size_t> t, Fraction c) {
  if (c.den <= 0 || c.num <= 0 || c.num >= c.den) {
    fail(ErrorCode::NotAdmissible, "scaling factor must satisfy 0 < c < 1");
  }
  std::vector<long long> r;
  r.reserve(t.size());
  for (std::size_t ti : t) r.push_back(c.num * static_cast<long long>(ti) / c.den);
  return ExponentTuple(std::move(r), std::vector<std::size_t>(t.begin(), t.end()));
}

std::vector<std::size_t> nilpotent_exponents(const Operator& nilpotent) {
  if (!nilpotent.is_nilpotent()) fail(ErrorCode::NotNilpotent, "operator is not nilpotent");
  const std::size_t n = nilpotent.dim();
  std::vector<std::size_t> rank(n + 2, 0);
  for (std::size_t j = 0; j <= n; ++j) rank[j] = nilpotent.power(j).rank();
  std::vector<std::size_t> out;
  // Blocks of size >= j number rank[j-1] - rank[j].
  for (std::size_t j = 1; j <= n; ++j) {
    const std::size_t at_least = rank[j - 1] - rank[j];
    const std::size_t at_least_next = rank[j] - rank[j + 1];
    out.insert(out.end(), at_least - at_least_next, j);
  }
  return out;
}

bool is_generator_tuple(const Operator& nilpotent, const JordanStructure& u) {
  if (u.exponents.size() != u.generators.size()) return false;
  if (u.exponents != nilpotent_exponents(nilpotent)) return false;
  std::vector<VectorF> bottoms;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u.generators[i].field() != nilpotent.field() || u.generators[i].size() != nilpotent.dim()) return false;
    if (exponent(nilpotent, u.generators[i]) != u.exponents[i]) return false;
    bottoms.push_back(nilpotent.apply_power(u.exponents[i] - 1, u.generators[i]));
  }
  return Subspace::span(nilpotent.field(), nilpotent.dim(), bottoms).dim() == u.size();
}

namespace {

void require_admissible(const ExponentTuple& r) {
  if (!r.admissible()) fail(ErrorCode::NotAdmissible, "tuple " + r.to_string() + " is not admissible");
}

}  // namespace

Subspace build_W_rU(const Operator& nilpotent, const JordanStructure& u, const ExponentTuple& r) {
  if (r.size() != u.size()) {
    fail(ErrorCode::LengthMismatch, "tuple length differs from the number of generators");
  }
  if (r.bound() != u.exponents) fail(ErrorCode::NotAdmissible, "tuple is measured against different exponents");
  require_admissible(r);
  Subspace w = Subspace::zero(nilpotent.field(), nilpotent.dim());
  for (std::size_t i = 0; i < u.size(); ++i) {
    const auto ri = static_cast<std::size_t>(r[i]);
    if (ri >= u.exponents[i]) continue;
    w = sum(w, cyclic_subspace(nilpotent, nilpotent.apply_power(ri, u.generators[i])));
  }
  return w;
}

Subspace build_W_r(const Operator& nilpotent, const ExponentTuple& r) {
  require_admissible(r);
  if (r.bound() != nilpotent_exponents(nilpotent)) {
    fail(ErrorCode::NotAdmissible, "tuple is measured against exponents that are not the operator's");
  }
  Subspace w = Subspace::zero(nilpotent.field(), nilpotent.dim());
  for (std::size_t i = 0; i < r.size(); ++i) {
    const auto ri = static_cast<std::size_t>(r[i]);
    const std::size_t gap = r.bound()[i] - ri;
    w = sum(w, intersect(image(nilpotent.power(ri)), kernel(nilpotent.power(gap))));
  }
  return w;
}

DivisorLists expected_divisors(const ExponentTuple& r) {
  require_admissible(r);
  DivisorLists out;
  for (std::size_t i = 0; i < r.size(); ++i) {
    const auto ri = static_cast<std::size_t>(r[i]);
    const std::size_t gap = r.bound()[i] - ri;
    if (gap) out.restriction.push_back(gap);
    else ++out.restriction_trivial;
    if (ri) out.quotient.push_back(ri);
    else ++out.quotient_trivial;
  }
  std::sort(out.restriction.begin(), out.restriction.end());
  std::sort(out.quotient.begin(), out.quotient.end());
  return out;
}

JordanStructure non_monotone_witness(const Operator& nilpotent, const JordanStructure& u, const ExponentTuple& r) {
  require_admissible(r);
  if (r.size() != u.size()) fail(ErrorCode::LengthMismatch, "tuple length differs from the number of generators");
  const auto& t = u.exponents;
  for (std::size_t i = 0; i + 1 < r.size(); ++i) {
    if (r[i] > r[i + 1]) {
      JordanStructure out = u;
      out.generators[i + 1] = u.generators[i] + u.generators[i + 1];
      return out;
    }
  }
  for (std::size_t i = 0; i + 1 < r.size(); ++i) {
    const long long gap_here = static_cast<long long>(t[i]) - r[i];
    const long long gap_next = static_cast<long long>(t[i + 1]) - r[i + 1];
    if (gap_here > gap_next) {
      JordanStructure out = u;
      out.generators[i] = u.generators[i] + nilpotent.apply_power(t[i + 1] - t[i], u.generators[i + 1]);
      return out;
    }
  }
  fail(ErrorCode::NotAdmissible, "tuple " + r.to_string() + " is monotone");
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::No: return "no";
    case Verdict::Yes: return "yes";
    case Verdict::Unknown: return "unknown";
  }
  return "unknown";
}

// ---------------------------------------------------------------- markedness search

namespace {

using detail::Lifter;

// Every nonempty subfamily of the remaining bottom spaces must add at least
// as many dimensions beyond `chosen` as it has members.
constexpr std::size_t kMaxRadoFamily = 14;

bool rado_feasible(const std::vector<Subspace>& bottoms, std::span<const std::size_t> remaining,
                   const Subspace& chosen) {
  const std::size_t m = remaining.size();
  if (m == 0) return true;
  if (m > kMaxRadoFamily) return true;  // pruning skipped; the search still backtracks
  std::vector<Subspace> acc(std::size_t{1} << m, chosen);
  const std::size_t base = chosen.dim();
  for (std::size_t mask = 1; mask < acc.size(); ++mask) {
    const auto low = static_cast<std::size_t>(std::countr_zero(mask));
    acc[mask] = sum(acc[mask & (mask - 1)], bottoms[remaining[low]]);
    if (acc[mask].dim() - base < static_cast<std::size_t>(std::popcount(mask))) return false;
  }
  return true;
}

struct Search {
  const Operator& f;
  std::vector<Subspace> bottoms;
  std::vector<Lifter> lifters;
  std::vector<std::size_t> order;
  std::uint64_t budget;
  std::uint64_t& nodes;
  bool exhausted = false;
  std::vector<VectorF> chosen_generators;

  bool run(std::size_t level, const Subspace& chosen) {
    if (level == order.size()) return true;
    const std::size_t i = order[level];
    std::span<const std::size_t> rest(order.data() + level + 1, order.size() - level - 1);
    bool found = false;
    for_each_vector(bottoms[i], [&](const VectorF& y) {
      if (y.is_zero()) return true;
      if (++nodes > budget) {
        exhausted = true;
        return false;
      }
      if (chosen.contains(y)) return true;
      Subspace next = sum(chosen, Subspace::span(y.field(), y.size(), {y}));
      if (!rado_feasible(bottoms, rest, next)) return true;
      chosen_generators[i] = lifters[i].lift(y);
      if (run(level + 1, next)) {
        found = true;
        return false;
      }
      return !exhausted;
    });
    return found;
  }
};

}  // namespace

MarkedResult is_marked(const Operator& nilpotent, const Subspace& x, std::uint64_t budget) {
  if (!nilpotent.is_nilpotent()) fail(ErrorCode::NotNilpotent, "markedness needs a nilpotent operator");
  if (!is_invariant_subspace(nilpotent, x)) fail(ErrorCode::NotInvariant, "subspace is not invariant: " + x.to_string());

  const PrimeField field = nilpotent.field();
  const std::size_t n = nilpotent.dim();
  const std::vector<std::size_t> t = nilpotent_exponents(nilpotent);
  const std::size_t k = t.size();
  std::vector<std::size_t> on_x = nilpotent_exponents(Operator(restricted_matrix(nilpotent, x)));

  MarkedResult result;
  std::vector<std::size_t> order(k);
  for (std::size_t i = 0; i < k; ++i) order[i] = i;

  for (const ExponentTuple& r : admissible_tuples(t)) {
    std::vector<std::size_t> gaps;
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t gap = t[i] - static_cast<std::size_t>(r[i]);
      if (gap) gaps.push_back(gap);
    }
    std::sort(gaps.begin(), gaps.end());
    if (gaps != on_x) continue;

    Search search{nilpotent, {}, {}, order, budget, result.nodes, false, std::vector<VectorF>(k, VectorF(field, n))};
    for (std::size_t i = 0; i < k; ++i) {
      Subspace candidates = intersect(kernel(nilpotent.power(t[i])),
                                      preimage(nilpotent.power(static_cast<std::size_t>(r[i])), x));
      search.lifters.emplace_back(nilpotent.power(t[i] - 1), candidates);
      search.bottoms.push_back(search.lifters.back().image());
    }
    if (!rado_feasible(search.bottoms, order, Subspace::zero(field, n))) continue;
    if (search.run(0, Subspace::zero(field, n))) {
      JordanStructure u{t, search.chosen_generators};
      if (!is_generator_tuple(nilpotent, u) || build_W_rU(nilpotent, u, r) != x) {
        throw std::logic_error("markedness search produced an invalid witness");
      }
      result.verdict = Verdict::Yes;
      result.witness = MarkedWitness{std::move(u), r};
      return result;
    }
    if (search.exhausted) {
      result.verdict = Verdict::Unknown;
      return result;
    }
  }
  result.verdict = Verdict::No;
  return result;
}

}  // namespace hinv
