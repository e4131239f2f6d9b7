#include "hinv/verify.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

#include "hinv/errors.hpp"

namespace hinv {

namespace {

constexpr std::size_t kWitnessesKept = 5;

std::string join_flags(const std::vector<std::pair<std::string, bool>>& flags) {
  std::string out;
  for (const auto& [name, v] : flags) out += (out.empty() ? "" : ", ") + name + "=" + (v ? "yes" : "no");
  return out;
}

std::string structure_name(const Operator& nilpotent) {
  std::ostringstream os;
  os << "t=(";
  const auto t = nilpotent_exponents(nilpotent);
  for (std::size_t i = 0; i < t.size(); ++i) os << (i ? "," : "") << t[i];
  os << ") over GF(" << nilpotent.field().modulus() << ")";
  return os.str();
}

bool verdict_yes(Verdict v) {
  if (v == Verdict::Unknown) throw Error(ErrorCode::SearchBudgetExceeded, "markedness undecided within budget");
  return v == Verdict::Yes;
}

}  // namespace

void PropertyTally::record(bool ok, const std::function<std::string()>& witness) {
  if (ok) {
    ++passed;
    return;
  }
  ++failed;
  if (witnesses.size() < kWitnessesKept) witnesses.push_back(witness());
}

PropertyTally& VerifyReport::property(const std::string& name) {
  for (auto& p : properties)
    if (p.name == name) return p;
  properties.push_back(PropertyTally{name, 0, 0, {}});
  return properties.back();
}

void VerifyReport::merge(const VerifyReport& other) {
  for (const auto& p : other.properties) {
    auto& mine = property(p.name);
    mine.passed += p.passed;
    mine.failed += p.failed;
    for (const auto& w : p.witnesses)
      if (mine.witnesses.size() < kWitnessesKept) mine.witnesses.push_back(w);
  }
  notes.insert(notes.end(), other.notes.begin(), other.notes.end());
}

bool VerifyReport::ok() const { return failures() == 0; }

std::uint64_t VerifyReport::failures() const {
  std::uint64_t n = 0;
  for (const auto& p : properties) n += p.failed;
  return n;
}

std::string VerifyReport::to_text() const {
  std::ostringstream os;
  for (const auto& p : properties) {
    os << (p.failed ? "FAIL " : "ok   ") << p.name << ": " << p.passed << " passed, " << p.failed << " failed\n";
    for (const auto& w : p.witnesses) os << "     witness: " << w << "\n";
  }
  for (const auto& n : notes) os << "note " << n << "\n";
  return os.str();
}

bool characteristic_exact(const Operator& nilpotent, const Subspace& x, const SearchOptions& opts) {
  if (count_generator_tuples(nilpotent) > opts.automorphism_cap) return !moving_generator(nilpotent, x);
  SearchOptions brute = opts;
  brute.force_bruteforce = true;
  return is_characteristic(nilpotent, x, brute).value;
}

void check_tuple_equivalences(const Operator& f, const SearchOptions& opts, VerifyReport& report) {
  const JordanStructure u0 = jordan_structure(f);
  const auto rs = admissible_tuples(u0.exponents);
  const auto uniform = uniform_over_tuples(f, rs, opts);
  auto& tally = report.property("tuple conditions agree");
  for (std::size_t q = 0; q < rs.size(); ++q) {
    const Subspace w = build_W_rU(f, u0, rs[q]);
    const std::vector<std::pair<std::string, bool>> flags{
        {"uniform", uniform[q].value},
        {"monotone", rs[q].monotone()},
        {"W(r,U)=W(r)", w == build_W_r(f, rs[q])},
        {"characteristic", characteristic_exact(f, w, opts)},
        {"hyperinvariant", is_hyperinvariant(f, w, opts).value},
    };
    bool same = true;
    for (const auto& fl : flags) same = same && fl.second == flags.front().second;
    tally.record(same, [&] { return structure_name(f) + ", r=" + rs[q].to_string() + ": " + join_flags(flags); });
  }
}

void check_divisor_lists(const Operator& f, VerifyReport& report) {
  const JordanStructure u0 = jordan_structure(f);
  auto& tally = report.property("restriction and quotient exponents");
  for (const auto& r : admissible_tuples(u0.exponents)) {
    const Subspace w = build_W_rU(f, u0, r);
    const auto expected = expected_divisors(r);
    const bool ok = restriction_structure(f, w).structure.exponents == expected.restriction &&
                    quotient_structure(f, w) == expected.quotient;
    tally.record(ok, [&] { return structure_name(f) + ", r=" + r.to_string(); });
  }
}

void check_counts(const Operator& f, const SearchOptions& opts, VerifyReport& report) {
  auto& tally = report.property("tuples and automorphisms equinumerous");
  const BigCount tuples = count_generator_tuples(f);
  const auto units = count_invertible_commutant(f);
  tally.record(units && *units == tuples, [&] {
    return structure_name(f) + ": " + tuples.str() + " tuples, " + (units ? units->str() : "no unit count");
  });
  if (tuples > opts.automorphism_cap) return;
  const std::uint64_t walked = enumerate_count_generator_tuples(f, opts.automorphism_cap);
  tally.record(walked == tuples, [&] { return structure_name(f) + ": walked " + std::to_string(walked); });
  if (!bounded_power(f.field().modulus(), commutant_basis(f).dim(), opts.automorphism_cap)) return;
  const std::uint64_t counted = enumerate_count_invertible_commutant(f, opts.automorphism_cap);
  tally.record(counted == tuples, [&] { return structure_name(f) + ": counted " + std::to_string(counted); });
}

void check_scaled_tuples(const Operator& f, VerifyReport& report) {
  const auto t = nilpotent_exponents(f);
  auto& tally = report.property("scaled tuples are monotone");
  for (long long den = 2; den <= 5; ++den)
    for (long long num = 1; num < den; ++num) {
      const auto r = scaled_tuple(t, {num, den});
      tally.record(r.monotone() && r.admissible(), [&] { return structure_name(f) + ", r=" + r.to_string(); });
    }
}

void check_subspace_relations(const Operator& f, const SearchOptions& opts, VerifyReport& report) {
  const auto invs = enumerate_invariant_subspaces(f, opts);
  const auto chars = characteristic_batch(f, invs, opts);
  const auto hinv = enumerate_hinv(f);
  const auto comps = decompose(f);
  const bool nilpotent = f.is_nilpotent();
  std::vector<Subspace> hyper_set, char_set, marked_set;

  auto& equiv = report.property("hyperinvariant iff characteristic and marked");
  auto& contain = report.property("hyperinvariant subspaces are characteristic and marked");
  auto& listed = report.property("hyperinvariant subspaces are the W(r) with monotone r");
  auto& distrib = report.property("hyperinvariant iff every cyclic decomposition splits it");
  for (std::size_t i = 0; i < invs.size(); ++i) {
    const Subspace& x = invs[i];
    const auto hyper = is_hyperinvariant(f, x, opts);
    bool marked = true;
    for (const auto& c : comps)
      marked = marked && verdict_yes(is_marked(c.restriction, c.localize(intersect(x, c.space)), opts.marked_budget).verdict);
    const bool chr = chars[i].value;
    if (hyper.value) hyper_set.push_back(x);
    if (chr) char_set.push_back(x);
    if (marked) marked_set.push_back(x);
    auto flags = [&] {
      return x.to_string() + ": " + join_flags({{"hyperinvariant", hyper.value}, {"characteristic", chr}, {"marked", marked}});
    };
    equiv.record(hyper.value == (chr && marked), flags);
    contain.record(!hyper.value || (chr && marked), flags);
    listed.record(hyper.value == hinv.contains(x), flags);

    if (!nilpotent) continue;
    bool splits = true;
    if (hyper.value) {
      for_each_generator_tuple(
          f,
          [&](const JordanStructure& u) {
            splits = check_distributivity(f, x, cyclic_parts(f, u));
            return splits;
          },
          opts.automorphism_cap);
    } else {
      splits = !nondistributive_tuple(f, x, opts).has_value();
    }
    distrib.record(splits == hyper.value, flags);
  }

  auto& closed = report.property("Hinv and Chinv are lattices");
  const ClosureReport ch = check_closure(hyper_set), cc = check_closure(char_set);
  closed.record(ch.meet_closed && ch.join_closed, [] { return std::string("Hinv not closed"); });
  closed.record(cc.meet_closed && cc.join_closed, [] { return std::string("Chinv not closed"); });

  if (f.field().modulus() > 2) {
    report.property("Chinv equals Hinv over larger fields").record(char_set == hyper_set, [&] {
      return structure_name(f) + ": " + std::to_string(char_set.size()) + " characteristic, " +
             std::to_string(hyper_set.size()) + " hyperinvariant";
    });
  }

  const ClosureReport cm = check_closure(marked_set);
  if (!cm.meet_closed) {
    const auto [a, b] = *cm.meet_failure;
    report.notes.push_back("marked subspaces not closed under intersection: " + marked_set[a].to_string() + " and " +
                           marked_set[b].to_string());
  }
}

VerifyReport verify_operator(const Operator& f, const SearchOptions& opts) {
  VerifyReport report;
  for (const auto& c : decompose(f)) {
    check_tuple_equivalences(c.restriction, opts, report);
    check_divisor_lists(c.restriction, report);
    check_counts(c.restriction, opts, report);
    check_scaled_tuples(c.restriction, report);
  }
  check_subspace_relations(f, opts, report);
  return report;
}

Operator random_split_operator(PrimeField field, std::size_t n, std::mt19937_64& rng) {
  const unsigned p = field.modulus();
  MatrixF j(field, n, n);
  std::size_t at = 0;
  while (at < n) {
    const std::size_t size = 1 + rng() % (n - at);
    const std::uint8_t lambda = std::uint8_t(rng() % p);
    for (std::size_t i = 0; i < size; ++i) {
      j(at + i, at + i) = lambda;
      if (i + 1 < size) j(at + i + 1, at + i) = 1;
    }
    at += size;
  }
  while (true) {
    MatrixF q(field, n, n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) q(a, b) = std::uint8_t(rng() % p);
    if (auto inv = q.inverse()) return Operator(q * j * *inv);
  }
}

VerifyReport verify_random(unsigned p, std::size_t n, std::size_t count, std::uint64_t seed,
                           const SearchOptions& opts) {
  PrimeField field(p);
  std::mt19937_64 rng(seed);
  VerifyReport report;
  for (std::size_t i = 0; i < count; ++i) report.merge(verify_operator(random_split_operator(field, n, rng), opts));
  return report;
}

void check_expectations(const Operator& f, const std::string& name, const Subspace& x, const Expectations& expect,
                        const SearchOptions& opts, VerifyReport& report) {
  auto& tally = report.property("fixture expectations");
  ClassificationReport rep;
  try {
    rep = decompose_and_classify(f, x, opts);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotInvariant) throw;
    rep.invariant = false;
  }
  for (const auto& [flag, want] : expect) {
    bool got = false;
    std::string refutation;
    if (flag == "invariant") {
      got = rep.invariant;
      if (!got) refutation = "f does not map " + name + " into itself";
    } else if (!rep.invariant) {
      refutation = name + " is not invariant";
    } else if (flag == "marked") {
      got = verdict_yes(rep.marked);
      if (!got) refutation = "no generator tuple splits " + name;
    } else if (flag == "characteristic") {
      got = rep.characteristic == Verdict::Yes;
      if (!got && rep.automorphism_witness)
        refutation = "automorphism " + rep.automorphism_witness->to_string() + " moves " + name;
    } else if (flag == "hyperinvariant") {
      got = rep.hyperinvariant == Verdict::Yes;
      if (!got && rep.endomorphism_witness) {
        const auto& w = *rep.endomorphism_witness;
        refutation = "g = " + w.g.to_string() + " sends x = " + w.x.to_string() + " in " + name + " to " +
                     (w.g * w.x).to_string() + " outside " + name;
      }
    } else {
      throw Error(ErrorCode::ParseError, "unknown expectation flag '" + flag + "'");
    }
    tally.record(got == want, [&] {
      if (want) return name + " expected " + flag + ", but " + refutation;
      return name + " expected not " + flag + ", but it is";
    });
  }
}

}  // namespace hinv
