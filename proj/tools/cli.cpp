#include "cli.hpp"

#include <cctype>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hinv/errors.hpp"

namespace hinv::cli {

namespace {

using json = nlohmann::json;

struct Settings {
  std::string input;
  std::string subspace;
  std::string r;
  std::string dot;
  bool json = false;
  std::uint64_t cap_vectors = kDefaultVectorCap;
  std::uint64_t cap_subspaces = 100000;
  bool force_bruteforce = false;
  bool force = false;
  std::vector<std::uint64_t> random;
  std::uint64_t seed = 1;
};

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

SearchOptions options_from(const Settings& s) {
  SearchOptions o;
  o.vector_cap = s.cap_vectors;
  o.subspace_cap = s.cap_subspaces;
  o.force_bruteforce = s.force_bruteforce;
  return o;
}

int exit_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonSplitCharPoly:
    case ErrorCode::NotInvariant:
    case ErrorCode::NotNilpotent:
    case ErrorCode::WrongField:
    case ErrorCode::NotGeneratorTuple:
    case ErrorCode::NotADecomposition:
    case ErrorCode::ComponentSplitFailed:
      return kHypothesis;
    case ErrorCode::EnumerationTooLarge:
    case ErrorCode::SearchBudgetExceeded:
      return kCapExceeded;
    default:
      return kParseError;
  }
}

json ints(const VectorF& v) {
  json out = json::array();
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(unsigned(v[i]));
  return out;
}

json ints(const MatrixF& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(ints(m.row(i)));
  return out;
}

json ints(const Subspace& x) { return ints(x.basis()); }

json verdict_json(Verdict v) {
  if (v == Verdict::Unknown) return nullptr;
  return v == Verdict::Yes;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string tuple_text(const std::vector<std::size_t>& t) {
  std::string out = "(";
  for (std::size_t i = 0; i < t.size(); ++i) out += (i ? ", " : "") + std::to_string(t[i]);
  return out + ")";
}

std::string generators_text(const std::vector<VectorF>& us) {
  std::string out = "(";
  for (std::size_t i = 0; i < us.size(); ++i) out += (i ? ", " : "") + format_vector(us[i]);
  return out + ")";
}

std::string labels_text(const std::vector<std::string>& labels) {
  std::string out;
  for (const auto& l : labels) out += (out.empty() ? "" : ", ") + l;
  return out;
}

std::vector<long long> parse_r(const std::string& text) {
  std::vector<long long> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
      if (used != item.size()) parse_fail("bad entry '" + item + "' in --r");
    } catch (const std::logic_error&) {
      parse_fail("bad entry '" + item + "' in --r");
    }
  }
  if (out.empty()) parse_fail("--r needs at least one entry");
  return out;
}

/// The single eigenvalue component an r tuple refers to.
const EigenComponent& sole_component(const std::vector<EigenComponent>& comps) {
  if (comps.size() != 1) parse_fail("an r tuple needs an operator with a single eigenvalue");
  return comps.front();
}

std::optional<std::vector<long long>> requested_r(const Settings& s, const ProblemInput& in) {
  if (!s.r.empty()) return parse_r(s.r);
  return in.r;
}

std::vector<std::string> names_of(const Operator& f, const Subspace& x) {
  const auto hinv = enumerate_hinv(f);
  if (auto i = hinv.index_of(x)) return hinv.labels[*i];
  return {};
}

// ---------------------------------------------------------------- commands

int cmd_analyze(const Settings& s, std::ostream& out) {
  const ProblemInput in = load_input(s.input);
  const Operator f(in.matrix);
  const auto comps = decompose(f);
  json doc{{"p", in.p}, {"n", f.dim()}, {"components", json::array()}};
  std::ostringstream text;
  text << "p = " << in.p << ", n = " << f.dim() << "\n";
  for (const auto& c : comps) {
    const JordanStructure js = jordan_structure(c.restriction);
    std::vector<VectorF> us;
    for (const auto& g : js.generators) us.push_back(c.to_ambient(g));
    text << "λ = " << c.lambda.to_string() << ", t = " << tuple_text(js.exponents) << ", U = " << generators_text(us)
         << "\n";
    json gens = json::array();
    for (const auto& u : us) gens.push_back(ints(u));
    doc["components"].push_back(
        {{"lambda", c.lambda.value()}, {"multiplicity", c.multiplicity}, {"t", js.exponents}, {"U", gens}});
  }
  if (auto rv = requested_r(s, in)) {
    const auto& c = sole_component(comps);
    const JordanStructure js = jordan_structure(c.restriction);
    const ExponentTuple r(*rv, js.exponents);
    const Subspace w_ru = c.globalize(build_W_rU(c.restriction, js, r));
    const Subspace w_r = c.globalize(build_W_r(c.restriction, r));
    const bool uniform = uniform_over_tuples(c.restriction, std::span<const ExponentTuple>(&r, 1), options_from(s))
                             .front()
                             .value;
    text << "r = " << r.to_string() << ": monotone " << yes_no(r.monotone()) << ", uniform over generator tuples "
         << yes_no(uniform) << "\n";
    text << "W(r,U) = " << w_ru.to_string() << "\n";
    text << "W(r) = " << w_r.to_string() << "\n";
    doc["r"] = {{"values", *rv},     {"monotone", r.monotone()}, {"uniform", uniform},
                {"W_rU", ints(w_ru)}, {"W_r", ints(w_r)}};
  }
  out << (s.json ? doc.dump(2) + "\n" : text.str());
  return kOk;
}

int cmd_classify(const Settings& s, std::ostream& out) {
  const ProblemInput in = load_input(s.input);
  const Operator f(in.matrix);
  std::string name = s.subspace;
  std::optional<Subspace> x;
  if (!name.empty()) {
    auto it = in.subspaces.find(name);
    if (it == in.subspaces.end()) parse_fail("no subspace named '" + name + "' in the input");
    x = it->second;
  } else if (auto rv = requested_r(s, in)) {
    const auto comps = decompose(f);
    const auto& c = sole_component(comps);
    const JordanStructure js = jordan_structure(c.restriction);
    const ExponentTuple r(*rv, js.exponents);
    x = c.globalize(build_W_rU(c.restriction, js, r));
    name = "W(" + r.to_string() + ", U)";
  } else {
    parse_fail("classify needs --subspace NAME or an r tuple");
  }

  json doc{{"subspace", name}, {"basis", ints(*x)}, {"dim", x->dim()}};
  std::ostringstream text;
  text << name << " = " << x->to_string() << "\n";

  ClassificationReport rep;
  try {
    rep = decompose_and_classify(f, *x, options_from(s));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotInvariant) throw;
    text << "invariant       no\n";
    doc["invariant"] = false;
    out << (s.json ? doc.dump(2) + "\n" : text.str());
    return kHypothesis;
  }

  const auto names = names_of(f, *x);
  if (!names.empty()) text << "names: " << labels_text(names) << "\n";
  text << "invariant       yes\n";
  text << "marked          " << to_string(rep.marked) << "\n";
  text << "characteristic  " << to_string(rep.characteristic) << "\n";
  text << "hyperinvariant  " << to_string(rep.hyperinvariant) << "\n";
  doc["names"] = names;
  doc["invariant"] = true;
  doc["marked"] = verdict_json(rep.marked);
  doc["characteristic"] = verdict_json(rep.characteristic);
  doc["hyperinvariant"] = verdict_json(rep.hyperinvariant);

  json witnesses = json::object();
  if (rep.endomorphism_witness) {
    const auto& w = *rep.endomorphism_witness;
    const VectorF gx = w.g * w.x;
    text << "commuting map g = " << w.g.to_string() << " sends x = " << format_vector(w.x) << " to "
         << format_vector(gx) << ", outside " << name << "\n";
    witnesses["endomorphism"] = {{"g", ints(w.g)}, {"x", ints(w.x)}, {"gx", ints(gx)}};
  }
  if (rep.automorphism_witness) {
    const auto& a = *rep.automorphism_witness;
    text << "automorphism " << a.to_string() << " maps " << name << " to " << map_subspace(a, *x).to_string() << "\n";
    witnesses["automorphism"] = ints(a);
  }
  json comps = json::array();
  for (const auto& c : rep.components) {
    json jc{{"lambda", c.lambda.value()},
            {"marked", verdict_json(c.marked)},
            {"characteristic", c.characteristic},
            {"hyperinvariant", c.hyperinvariant}};
    if (c.marked_witness) {
      std::vector<VectorF> us = c.marked_witness->tuple.generators;
      text << "λ = " << c.lambda.to_string() << ": equals W(r,U) for U = " << generators_text(us)
           << " (component coordinates), r = " << c.marked_witness->r.to_string() << "\n";
      json gens = json::array();
      for (const auto& u : us) gens.push_back(ints(u));
      jc["marked_witness"] = {{"U", gens}, {"r", c.marked_witness->r.values()}};
    }
    if (c.hyperinvariant_r) jc["hyperinvariant_r"] = c.hyperinvariant_r->values();
    comps.push_back(std::move(jc));
  }
  doc["witnesses"] = witnesses;
  doc["components"] = comps;
  out << (s.json ? doc.dump(2) + "\n" : text.str());
  return kOk;
}

int cmd_lattice(const Settings& s, std::ostream& out) {
  const ProblemInput in = load_input(s.input);
  const Operator f(in.matrix);
  const SubspaceLattice l = enumerate_hinv(f);
  if (!l.is_lattice()) throw std::logic_error("hyperinvariant subspaces are not closed under sum and intersection");
  json doc{{"elements", json::array()}, {"edges", json::array()}};
  std::ostringstream text;
  text << "Hinv: " << l.size() << " subspaces, " << l.hasse_edges.size() << " covering pairs\n";
  for (std::size_t i = 0; i < l.size(); ++i) {
    text << "  [" << i << "] dim=" << l.elements[i].dim() << "  " << labels_text(l.labels[i]) << "  "
         << l.elements[i].to_string() << "\n";
    doc["elements"].push_back({{"dim", l.elements[i].dim()}, {"labels", l.labels[i]}, {"basis", ints(l.elements[i])}});
  }
  for (const auto& [a, b] : l.hasse_edges) {
    text << "  [" << a << "] < [" << b << "]\n";
    doc["edges"].push_back({a, b});
  }
  if (!s.dot.empty()) {
    std::ofstream file(s.dot, std::ios::binary);
    if (!file) parse_fail("cannot write " + s.dot);
    file << to_dot(l, "hinv");
  }
  out << (s.json ? doc.dump(2) + "\n" : text.str());
  return kOk;
}

int cmd_search(const Settings& s, std::ostream& out) {
  const ProblemInput in = load_input(s.input);
  const Operator f(in.matrix);
  const auto found = search_characteristic_not_hyperinvariant(f, options_from(s), s.force);
  json doc{{"count", found.size()}, {"subspaces", json::array()}};
  std::ostringstream text;
  text << "characteristic but not hyperinvariant: " << found.size() << "\n";
  for (const auto& x : found) {
    text << "  dim=" << x.dim() << "  " << x.to_string() << "\n";
    doc["subspaces"].push_back(ints(x));
  }
  out << (s.json ? doc.dump(2) + "\n" : text.str());
  return kOk;
}

json report_json(const VerifyReport& r) {
  json props = json::array();
  for (const auto& p : r.properties)
    props.push_back({{"name", p.name}, {"passed", p.passed}, {"failed", p.failed}, {"witnesses", p.witnesses}});
  return {{"ok", r.ok()}, {"properties", props}, {"notes", r.notes}};
}

int cmd_verify(const Settings& s, std::ostream& out) {
  const SearchOptions opts = options_from(s);
  VerifyReport report;
  if (!s.random.empty()) {
    if (s.random[0] > 251) parse_fail("modulus out of range");
    report = verify_random(unsigned(s.random[0]), s.random[1], s.random[2], s.seed, opts);
  } else {
    const ProblemInput in = load_input(s.input);
    const Operator f(in.matrix);
    report = verify_operator(f, opts);
    for (const auto& [name, expect] : in.expect) {
      auto it = in.subspaces.find(name);
      if (it == in.subspaces.end()) parse_fail("expectations for unknown subspace '" + name + "'");
      check_expectations(f, name, it->second, expect, opts, report);
    }
  }
  if (s.json) {
    out << report_json(report).dump(2) << "\n";
  } else {
    out << report.to_text();
    out << (report.ok() ? "all properties hold\n" : std::to_string(report.failures()) + " violations\n");
  }
  return report.ok() ? kOk : kViolation;
}

}  // namespace

std::string format_vector(const VectorF& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i]) continue;
    if (!out.empty()) out += "+";
    if (v[i] != 1) out += std::to_string(unsigned(v[i]));
    out += "e" + std::to_string(i + 1);
  }
  return out.empty() ? "0" : out;
}

ProblemInput parse_input(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    parse_fail(e.what());
  }
  if (!doc.is_object()) parse_fail("input must be a JSON object");
  auto integer = [](const json& v, const std::string& where) {
    if (!v.is_number_integer()) parse_fail(where + " must be an integer");
    return v.get<long long>();
  };
  auto rows_of = [&](const json& v, const std::string& where, std::size_t width) {
    if (!v.is_array()) parse_fail(where + " must be a list of rows");
    std::vector<std::vector<long long>> rows;
    for (const auto& row : v) {
      if (!row.is_array() || (width && row.size() != width))
        parse_fail(where + " rows must be lists of length " + std::to_string(width));
      std::vector<long long> r;
      for (const auto& e : row) r.push_back(integer(e, where + " entries"));
      rows.push_back(std::move(r));
    }
    return rows;
  };

  ProblemInput in;
  if (!doc.contains("p")) parse_fail("missing \"p\"");
  const long long p = integer(doc["p"], "p");
  if (p < 2 || p > 251) parse_fail("p must be a prime at most 251");
  PrimeField field(static_cast<unsigned>(p));
  in.p = unsigned(p);

  if (!doc.contains("matrix")) parse_fail("missing \"matrix\"");
  const auto rows = rows_of(doc["matrix"], "matrix", doc["matrix"].empty() ? 0 : doc["matrix"].size());
  if (rows.empty()) parse_fail("matrix must be non-empty");
  in.matrix = MatrixF::from_ints(field, rows);
  const std::size_t n = rows.size();

  if (doc.contains("subspaces")) {
    if (!doc["subspaces"].is_object()) parse_fail("\"subspaces\" must map names to lists of vectors");
    for (const auto& [name, vecs] : doc["subspaces"].items()) {
      std::vector<VectorF> gens;
      for (const auto& r : rows_of(vecs, "subspace " + name, n)) gens.push_back(VectorF::from_ints(field, r));
      in.subspaces.emplace(name, Subspace::span(field, n, gens));
    }
  }
  if (doc.contains("r")) {
    if (!doc["r"].is_array()) parse_fail("\"r\" must be a list of integers");
    std::vector<long long> r;
    for (const auto& e : doc["r"]) r.push_back(integer(e, "r"));
    in.r = std::move(r);
  }
  if (doc.contains("expect")) {
    if (!doc["expect"].is_object()) parse_fail("\"expect\" must map subspace names to flags");
    for (const auto& [name, flags] : doc["expect"].items()) {
      if (!flags.is_object()) parse_fail("expectations for " + name + " must be an object");
      Expectations e;
      for (const auto& [flag, value] : flags.items()) {
        if (!value.is_boolean()) parse_fail("expectation " + name + "." + flag + " must be true or false");
        if (flag != "invariant" && flag != "marked" && flag != "characteristic" && flag != "hyperinvariant")
          parse_fail("unknown expectation flag '" + flag + "'");
        e[flag] = value.get<bool>();
      }
      in.expect.emplace(name, std::move(e));
    }
  }
  return in;
}

ProblemInput load_input(const std::string& path) {
  if (path.empty()) parse_fail("--input FILE is required");
  std::ifstream file(path);
  if (!file) parse_fail("cannot read " + path);
  std::stringstream buf;
  buf << file.rdbuf();
  return parse_input(buf.str());
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Settings s;
  CLI::App app{"Classifies invariant subspaces of a matrix over GF(p) as marked, characteristic and hyperinvariant",
               "hinv"};
  app.require_subcommand(1);

  auto common = [&](CLI::App* sub) {
    sub->add_option("--input", s.input, "problem file (JSON)");
    sub->add_flag("--json", s.json, "print JSON instead of text");
    sub->add_option("--cap-vectors", s.cap_vectors, "largest number of vectors walked");
    sub->add_option("--cap-subspaces", s.cap_subspaces, "largest number of subspaces enumerated");
    sub->add_flag("--force-bruteforce", s.force_bruteforce, "enumerate automorphisms for every field");
  };
  auto* analyze = app.add_subcommand("analyze", "eigenvalues, Jordan exponents and a generator tuple");
  common(analyze);
  analyze->add_option("--r", s.r, "tuple such as \"1,0\"; also reports W(r,U) and W(r)");
  auto* classify = app.add_subcommand("classify", "classify one subspace");
  common(classify);
  classify->add_option("--subspace", s.subspace, "name of a subspace in the input");
  classify->add_option("--r", s.r, "classify W(r,U) for the computed generator tuple U");
  auto* lattice = app.add_subcommand("lattice", "list the hyperinvariant subspaces");
  common(lattice);
  lattice->add_option("--dot", s.dot, "write the Hasse diagram as Graphviz text");
  auto* search = app.add_subcommand("search", "characteristic subspaces that are not hyperinvariant");
  common(search);
  search->add_flag("--force", s.force, "search over fields other than GF(2)");
  auto* verify = app.add_subcommand("verify", "run the property suites");
  common(verify);
  verify->add_option("--random", s.random, "p n count: random operators with eigenvalues in GF(p)")->expected(3);
  verify->add_option("--seed", s.seed, "seed of the random operators");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kParseError;
  }

  try {
    if (*analyze) return cmd_analyze(s, out);
    if (*classify) return cmd_classify(s, out);
    if (*lattice) return cmd_lattice(s, out);
    if (*search) return cmd_search(s, out);
    return cmd_verify(s, out);
  } catch (const Error& e) {
    err << e.what() << "\n";
    return exit_for(e.code());
  } catch (const std::logic_error& e) {
    err << "internal inconsistency: " << e.what() << "\n";
    return kViolation;
  }
}

}  // namespace hinv::cli
