#include "hinv/lattice.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_set>

#include <boost/multiprecision/cpp_int.hpp>

#include "hinv/errors.hpp"

namespace hinv {

namespace {

void append_unique(std::vector<std::string>& into, const std::vector<std::string>& from) {
  for (const auto& s : from)
    if (std::find(into.begin(), into.end(), s) == into.end()) into.push_back(s);
}

std::string power_name(const std::string& base, std::size_t j) {
  return j == 1 ? base : base + "^" + std::to_string(j);
}

SubspaceLattice nilpotent_hinv(const Operator& f) {
  const auto t = nilpotent_exponents(f);
  std::vector<Subspace> xs;
  std::vector<std::vector<std::string>> labels;
  for (const auto& r : admissible_tuples(t)) {
    if (!r.monotone()) continue;
    xs.push_back(build_W_r(f, r));
    labels.push_back({"W" + r.to_string()});
  }
  for (std::size_t i = 0; i < xs.size(); ++i) {
    auto names = symbolic_names(f, xs[i]);
    append_unique(names, labels[i]);
    labels[i] = std::move(names);
  }
  return make_lattice(std::move(xs), std::move(labels));
}

std::vector<Subspace> invariant_filter(const Operator& f, const SearchOptions& opts) {
  std::vector<Subspace> out;
  for (auto& x : enumerate_all_subspaces(f.field(), f.dim(), opts.subspace_cap))
    if (maps_into(f.matrix(), x, x)) out.push_back(std::move(x));
  return out;
}

}  // namespace

std::optional<std::size_t> SubspaceLattice::index_of(const Subspace& x) const {
  auto it = std::lower_bound(elements.begin(), elements.end(), x);
  if (it == elements.end() || *it != x) return std::nullopt;
  return std::size_t(it - elements.begin());
}

SubspaceLattice make_lattice(std::vector<Subspace> xs, std::vector<std::vector<std::string>> labels) {
  labels.resize(xs.size());
  std::map<Subspace, std::vector<std::string>> merged;
  for (std::size_t i = 0; i < xs.size(); ++i) append_unique(merged[xs[i]], labels[i]);
  SubspaceLattice out;
  for (auto& [x, tags] : merged) {
    out.elements.push_back(x);
    out.labels.push_back(std::move(tags));
  }
  out.hasse_edges = hasse(out.elements);
  out.closure = check_closure(out.elements);
  return out;
}

std::vector<HasseEdge> hasse(std::span<const Subspace> elements) {
  const std::size_t n = elements.size();
  std::vector<std::vector<char>> below(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      below[i][j] = i != j && elements[i].dim() < elements[j].dim() && elements[i].is_subspace_of(elements[j]);
  std::vector<HasseEdge> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (!below[i][j]) continue;
      bool covers = true;
      for (std::size_t k = 0; k < n && covers; ++k) covers = !(below[i][k] && below[k][j]);
      if (covers) out.emplace_back(i, j);
    }
  return out;
}

ClosureReport check_closure(std::span<const Subspace> elements) {
  std::unordered_set<Subspace, SubspaceHash> present(elements.begin(), elements.end());
  ClosureReport out;
  for (std::size_t i = 0; i < elements.size(); ++i)
    for (std::size_t j = i + 1; j < elements.size(); ++j) {
      if (out.meet_closed && !present.count(intersect(elements[i], elements[j]))) {
        out.meet_closed = false;
        out.meet_failure = {i, j};
      }
      if (out.join_closed && !present.count(sum(elements[i], elements[j]))) {
        out.join_closed = false;
        out.join_failure = {i, j};
      }
    }
  return out;
}

std::vector<std::string> symbolic_names(const Operator& f, const Subspace& x) {
  std::vector<std::string> out;
  if (x.is_zero()) out.push_back("0");
  if (x.is_whole()) out.push_back("V");
  const std::size_t m = f.nilpotency_index();
  for (std::size_t j = 1; j < m; ++j)
    if (image(f.power(j)) == x) out.push_back(power_name("f", j) + "V");
  for (std::size_t j = 1; j < m; ++j)
    if (kernel(f.power(j)) == x) out.push_back("V[" + power_name("f", j) + "]");
  return out;
}

SubspaceLattice enumerate_hinv(const Operator& f) {
  if (f.is_nilpotent()) return nilpotent_hinv(f);
  const auto comps = decompose(f);
  std::vector<SubspaceLattice> local;
  for (const auto& c : comps) local.push_back(nilpotent_hinv(c.restriction));
  std::vector<Subspace> xs;
  std::vector<std::vector<std::string>> labels;
  std::vector<std::size_t> digit(comps.size(), 0);
  while (true) {
    Subspace x = Subspace::zero(f.field(), f.dim());
    std::string tag;
    for (std::size_t c = 0; c < comps.size(); ++c) {
      x = sum(x, comps[c].globalize(local[c].elements[digit[c]]));
      const auto& names = local[c].labels[digit[c]];
      if (c) tag += " + ";
      tag += (names.empty() ? std::string("?") : names.front()) + "@" + comps[c].lambda.to_string();
    }
    xs.push_back(std::move(x));
    labels.push_back({tag});
    std::size_t c = 0;
    while (c < comps.size() && ++digit[c] == local[c].size()) digit[c++] = 0;
    if (c == comps.size()) break;
  }
  return make_lattice(std::move(xs), std::move(labels));
}

std::optional<std::uint64_t> count_all_subspaces(unsigned p, std::size_t n, std::uint64_t cap) {
  using boost::multiprecision::cpp_int;
  // Gaussian binomials row by row: [m, k] = [m-1, k-1] + p^k [m-1, k].
  std::vector<cpp_int> row{1};
  for (std::size_t m = 1; m <= n; ++m) {
    std::vector<cpp_int> next(m + 1);
    cpp_int pk = 1;
    for (std::size_t k = 0; k <= m; ++k) {
      next[k] = (k ? row[k - 1] : cpp_int(0)) + (k < m ? pk * row[k] : cpp_int(0));
      pk *= p;
    }
    row = std::move(next);
  }
  cpp_int total = 0;
  for (const auto& c : row) total += c;
  if (total > cap) return std::nullopt;
  return total.convert_to<std::uint64_t>();
}

std::vector<Subspace> enumerate_all_subspaces(PrimeField field, std::size_t n, std::uint64_t cap) {
  if (!count_all_subspaces(field.modulus(), n, cap))
    throw Error(ErrorCode::EnumerationTooLarge, "GF(" + std::to_string(field.modulus()) + ")^" + std::to_string(n) +
                                                   " has more than " + std::to_string(cap) + " subspaces");
  const std::uint8_t p = std::uint8_t(field.modulus());
  std::vector<Subspace> out;
  for (std::size_t k = 0; k <= n; ++k) {
    // Pivot columns as a combination, advanced in lexicographic order.
    std::vector<std::size_t> piv(k);
    for (std::size_t i = 0; i < k; ++i) piv[i] = i;
    while (true) {
      std::vector<char> is_pivot(n, 0);
      for (auto c : piv) is_pivot[c] = 1;
      std::vector<std::pair<std::size_t, std::size_t>> free;
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = piv[i] + 1; j < n; ++j)
          if (!is_pivot[j]) free.emplace_back(i, j);
      MatrixF m(field, k, n);
      for (std::size_t i = 0; i < k; ++i) m(i, piv[i]) = 1;
      while (true) {
        out.push_back(Subspace::row_space(m));
        std::size_t d = 0;
        while (d < free.size()) {
          auto& e = m(free[d].first, free[d].second);
          if (++e < p) break;
          e = 0;
          ++d;
        }
        if (d == free.size()) break;
      }
      std::size_t i = k;
      while (i > 0 && piv[i - 1] == n - k + i - 1) --i;
      if (i == 0) break;
      ++piv[i - 1];
      for (std::size_t j = i; j < k; ++j) piv[j] = piv[j - 1] + 1;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Subspace> enumerate_invariant_subspaces(const Operator& f, const SearchOptions& opts) {
  return invariant_filter(f, opts);
}

SubspaceLattice enumerate_chinv(const Operator& f, const SearchOptions& opts) {
  const auto invs = invariant_filter(f, opts);
  const auto verdicts = characteristic_batch(f, invs, opts);
  const auto hinv = enumerate_hinv(f);
  std::vector<Subspace> xs;
  std::vector<std::vector<std::string>> labels;
  for (std::size_t i = 0; i < invs.size(); ++i) {
    if (!verdicts[i].value) continue;
    xs.push_back(invs[i]);
    auto at = hinv.index_of(invs[i]);
    labels.push_back(at ? hinv.labels[*at] : std::vector<std::string>{});
  }
  return make_lattice(std::move(xs), std::move(labels));
}

std::vector<Subspace> enumerate_marked(const Operator& f, const SearchOptions& opts) {
  const auto comps = f.is_nilpotent() ? std::vector<EigenComponent>{} : decompose(f);
  std::vector<Subspace> out;
  for (auto& x : invariant_filter(f, opts)) {
    bool marked = true;
    auto decide = [&](const Operator& g, const Subspace& local) {
      auto res = is_marked(g, local, opts.marked_budget);
      if (res.verdict == Verdict::Unknown)
        throw Error(ErrorCode::SearchBudgetExceeded, "markedness of " + x.to_string() + " undecided within budget");
      return res.verdict == Verdict::Yes;
    };
    if (comps.empty()) {
      marked = decide(f, x);
    } else {
      for (std::size_t c = 0; c < comps.size() && marked; ++c)
        marked = decide(comps[c].restriction, comps[c].localize(intersect(x, comps[c].space)));
    }
    if (marked) out.push_back(std::move(x));
  }
  return out;
}

std::vector<Subspace> search_characteristic_not_hyperinvariant(const Operator& f, const SearchOptions& opts,
                                                               bool any_field) {
  if (f.field().modulus() != 2 && !any_field)
    throw Error(ErrorCode::WrongField, "over GF(" + std::to_string(f.field().modulus()) +
                                           ") every characteristic subspace is hyperinvariant, so the search "
                                           "only makes sense over GF(2); use --force to run it anyway");
  const auto invs = invariant_filter(f, opts);
  const auto verdicts = characteristic_batch(f, invs, opts);
  std::vector<Subspace> out;
  for (std::size_t i = 0; i < invs.size(); ++i)
    if (verdicts[i].value && !is_hyperinvariant(f, invs[i], opts).value) out.push_back(invs[i]);
  return out;
}

std::string to_dot(const SubspaceLattice& lattice, const std::string& name) {
  std::ostringstream os;
  os << "digraph " << name << " {\n  node [shape=box];\n";
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    std::string tags;
    for (const auto& l : lattice.labels[i]) tags += (tags.empty() ? "" : ", ") + l;
    if (tags.empty()) tags = lattice.elements[i].to_string();
    os << "  n" << i << " [label=\"dim=" << lattice.elements[i].dim() << "\\n" << tags << "\"];\n";
  }
  for (const auto& [a, b] : lattice.hasse_edges) os << "  n" << a << " -> n" << b << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace hinv
