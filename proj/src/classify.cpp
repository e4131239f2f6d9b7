#include "hinv/classify.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "hinv/detail/lifter.hpp"
#include "hinv/detail/packed.hpp"

namespace hinv {

namespace {

using detail::CoordinateSolver;
using detail::PackedEchelon;
using detail::PackedMap;

void require_invariant(const Operator& f, const Subspace& x) {
  if (!is_invariant(f, x)) fail(ErrorCode::NotInvariant, "subspace is not invariant: " + x.to_string());
}

BigCount big_power(unsigned p, std::size_t e) {
  BigCount out = 1;
  for (std::size_t i = 0; i < e; ++i) out *= p;
  return out;
}

/// Smallest element generating GF(p)^x.
std::uint8_t primitive_element(PrimeField field) {
  const unsigned p = field.modulus();
  for (unsigned a = 2; a < p; ++a) {
    unsigned order = 1;
    std::uint8_t power = std::uint8_t(a);
    while (power != 1) {
      power = field.mul(power, std::uint8_t(a));
      ++order;
    }
    if (order == p - 1) return std::uint8_t(a);
  }
  return 1;
}

}  // namespace

bool is_invariant(const Operator& f, const Subspace& x) { return is_invariant_subspace(f, x); }

CommutantBasis commutant_basis(const Operator& f) {
  const PrimeField field = f.field();
  const std::size_t n = f.dim();
  const MatrixF& m = f.matrix();
  MatrixF system(field, n * n, n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t row = i * n + j;
      // (gf - fg)_ij = sum_k g_ik f_kj - f_ik g_kj
      for (std::size_t k = 0; k < n; ++k) {
        system(row, i * n + k) = field.add(system(row, i * n + k), m(k, j));
        system(row, k * n + j) = field.sub(system(row, k * n + j), m(i, k));
      }
    }
  const Subspace solutions = kernel(system);
  CommutantBasis out;
  for (std::size_t s = 0; s < solutions.dim(); ++s) {
    const VectorF v = solutions.basis_vector(s);
    MatrixF g(field, n, n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) g(a, b) = v[a * n + b];
    out.basis.push_back(std::move(g));
  }
  return out;
}

// ---------------------------------------------------------------- hyperinvariance

namespace {

std::optional<EndomorphismWitness> escaping_vector(const MatrixF& g, const Subspace& x) {
  for (std::size_t b = 0; b < x.dim(); ++b) {
    VectorF v = x.basis_vector(b);
    if (!x.contains(g * v)) return EndomorphismWitness{g, std::move(v)};
  }
  return std::nullopt;
}

}  // namespace

HyperinvariantResult is_hyperinvariant(const Operator& f, const Subspace& x, const SearchOptions& opts) {
  require_invariant(f, x);
  HyperinvariantResult out;
  const CommutantBasis comm = commutant_basis(f);
  if (!opts.full_commutant_sweep) {
    for (const MatrixF& g : comm.basis) {
      if (auto w = escaping_vector(g, x)) {
        out.value = false;
        out.witness = std::move(w);
        return out;
      }
    }
    return out;
  }
  const PrimeField field = f.field();
  const std::size_t n = f.dim();
  for_each_vector(
      Subspace::whole(field, comm.dim()),
      [&](const VectorF& c) {
        MatrixF g(field, n, n);
        for (std::size_t j = 0; j < comm.dim(); ++j)
          if (c[j]) g += comm.basis[j].scaled(c[j]);
        if (auto w = escaping_vector(g, x)) {
          out.value = false;
          out.witness = std::move(w);
          return false;
        }
        return true;
      },
      opts.vector_cap);
  return out;
}

// ---------------------------------------------------------------- counting

BigCount general_linear_order(unsigned p, std::size_t m) {
  BigCount out = 1;
  const BigCount q = big_power(p, m);
  for (std::size_t i = 0; i < m; ++i) out *= q - big_power(p, i);
  return out;
}

BigCount count_generator_tuples(const Operator& nilpotent) {
  const std::vector<std::size_t> t = nilpotent_exponents(nilpotent);
  const unsigned p = nilpotent.field().modulus();
  const std::size_t n = nilpotent.dim();
  auto kappa = [&](std::size_t j) { return n - nilpotent.power(j).rank(); };
  std::vector<std::size_t> order(t.rbegin(), t.rend());
  BigCount out = 1;
  std::size_t chosen = 0;
  for (std::size_t ti : order) {
    out *= big_power(p, kappa(ti)) - big_power(p, kappa(ti - 1) + chosen);
    ++chosen;
  }
  return out;
}

std::optional<BigCount> count_invertible_commutant(const Operator& nilpotent) {
  if (!nilpotent.is_nilpotent()) fail(ErrorCode::NotNilpotent, "counting needs a nilpotent operator");
  const PrimeField field = nilpotent.field();
  const std::size_t n = nilpotent.dim();
  const std::size_t m = nilpotent.nilpotency_index();
  const Subspace socle = kernel(nilpotent.matrix());
  std::vector<Subspace> layers;  // Ker f cap f^j V, j = 0..m
  for (std::size_t j = 0; j <= m; ++j) layers.push_back(intersect(socle, image(nilpotent.power(j))));

  const CommutantBasis comm = commutant_basis(nilpotent);
  std::vector<std::vector<std::uint8_t>> rows(comm.dim());
  std::vector<std::size_t> piece_dims;
  for (std::size_t j = 0; j < m; ++j) {
    // Complete a basis of layer j+1 to one of layer j; the added vectors span the piece.
    std::vector<VectorF> basis = layers[j + 1].basis_vectors();
    const std::size_t lower = basis.size();
    Subspace running = layers[j + 1];
    for (std::size_t b = 0; b < layers[j].dim(); ++b) {
      VectorF v = layers[j].basis_vector(b);
      if (running.contains(v)) continue;
      running = sum(running, Subspace::span(field, n, {v}));
      basis.push_back(std::move(v));
    }
    const std::size_t piece = basis.size() - lower;
    piece_dims.push_back(piece);
    if (piece == 0) continue;
    CoordinateSolver solver(field, n, basis);
    for (std::size_t s = 0; s < comm.dim(); ++s) {
      for (std::size_t a = 0; a < piece; ++a) {
        auto coords = solver.solve(comm.basis[s] * basis[lower + a]);
        if (!coords) throw std::logic_error("commutant member leaves a socle layer");
        for (std::size_t b = 0; b < piece; ++b) rows[s].push_back((*coords)[lower + b]);
      }
    }
  }
  std::size_t target = 0;
  for (std::size_t d : piece_dims) target += d * d;
  std::size_t rank = 0;
  if (target) {
    MatrixF restriction(field, comm.dim(), target);
    for (std::size_t s = 0; s < comm.dim(); ++s)
      for (std::size_t c = 0; c < target; ++c) restriction(s, c) = rows[s][c];
    rank = restriction.rank();
  }
  if (rank != target) return std::nullopt;
  BigCount out = big_power(field.modulus(), comm.dim() - rank);
  for (std::size_t d : piece_dims) out *= general_linear_order(field.modulus(), d);
  return out;
}

// ---------------------------------------------------------------- tuple sweeps

namespace {

void require_tuple_cap(const Operator& nilpotent, std::uint64_t cap) {
  const BigCount count = count_generator_tuples(nilpotent);
  if (count > cap) {
    fail(ErrorCode::EnumerationTooLarge,
         "the operator has " + count.str() + " generator tuples, beyond the cap of " + std::to_string(cap));
  }
}

/// Depth-first walk over all generator tuples in packed form. Level i runs
/// u_i = u0_i + v over v in Ker f^{t_i} in odometer order, keeping the tuples
/// whose chain bottoms stay independent.
template <class Ops>
class TupleWalker {
 public:
  using Vec = typename Ops::Vec;
  using Visitor = std::function<bool(const std::vector<Vec>&)>;

  TupleWalker(const Ops& ops, const Operator& nilpotent, const JordanStructure& canonical)
      : ops_(ops), t_(canonical.exponents), p_(nilpotent.field().modulus()) {
    for (std::size_t i = 0; i < t_.size(); ++i) {
      const MatrixF& top = nilpotent.power(t_[i] - 1);
      u0_.push_back(ops.pack(canonical.generators[i]));
      bottom0_.push_back(ops.pack(top * canonical.generators[i]));
      const Subspace k = kernel(nilpotent.power(t_[i]));
      std::vector<Vec> basis, bottoms;
      for (std::size_t b = 0; b < k.dim(); ++b) {
        basis.push_back(ops.pack(k.basis_vector(b)));
        bottoms.push_back(ops.pack(top * k.basis_vector(b)));
      }
      kernel_basis_.push_back(std::move(basis));
      kernel_bottoms_.push_back(std::move(bottoms));
    }
    current_.assign(t_.size(), ops.zero());
  }

  void run(const Visitor& visit) {
    stopped_ = false;
    if (t_.empty()) {
      visit(current_);
      return;
    }
    level(0, PackedEchelon<Ops>{}, visit);
  }

 private:
  void level(std::size_t i, const PackedEchelon<Ops>& bottoms, const Visitor& visit) {
    Vec u = u0_[i];
    Vec b = bottom0_[i];
    const auto& basis = kernel_basis_[i];
    const auto& images = kernel_bottoms_[i];
    const std::size_t d = basis.size();
    const bool last = i + 1 == t_.size();
    std::vector<unsigned> digit(d, 0);
    while (true) {
      if (!bottoms.contains(ops_, b)) {
        current_[i] = u;
        if (last) {
          if (!visit(current_)) stopped_ = true;
        } else {
          PackedEchelon<Ops> next = bottoms;
          next.insert(ops_, b);
          level(i + 1, next, visit);
        }
        if (stopped_) return;
      }
      std::size_t j = 0;
      for (; j < d; ++j) {
        u = ops_.add(u, basis[j]);
        b = ops_.add(b, images[j]);
        if (++digit[j] < p_) break;
        digit[j] = 0;
      }
      if (j == d) return;
    }
  }

  const Ops& ops_;
  std::vector<std::size_t> t_;
  unsigned p_;
  std::vector<Vec> u0_, bottom0_;
  std::vector<std::vector<Vec>> kernel_basis_, kernel_bottoms_;
  std::vector<Vec> current_;
  bool stopped_ = false;
};

template <class Ops>
JordanStructure unpack_tuple(const Ops& ops, const std::vector<std::size_t>& t,
                             const std::vector<typename Ops::Vec>& u) {
  JordanStructure out;
  out.exponents = t;
  for (const auto& v : u) out.generators.push_back(ops.unpack(v));
  return out;
}

/// The chain vectors f^j u_i in Jordan basis order.
template <class Ops>
void chain_vectors(const Ops& ops, const PackedMap<Ops>& f, const std::vector<std::size_t>& t,
                   const std::vector<typename Ops::Vec>& u, std::vector<typename Ops::Vec>& out) {
  out.clear();
  for (std::size_t i = 0; i < t.size(); ++i) {
    auto v = u[i];
    for (std::size_t j = 0; j < t[i]; ++j) {
      out.push_back(v);
      if (j + 1 < t[i]) v = f.apply(ops, v);
    }
  }
}

struct SparseCoords {
  std::vector<std::size_t> index;
  std::vector<std::uint8_t> coeff;
};

SparseCoords sparse(const VectorF& v) {
  SparseCoords out;
  for (std::size_t k = 0; k < v.size(); ++k)
    if (v[k]) {
      out.index.push_back(k);
      out.coeff.push_back(v[k]);
    }
  return out;
}

/// Aut_f(V) sweep deciding alpha(X) = X for every X at once, f nilpotent.
/// Returns, per subspace, the first moving automorphism in walk order.
std::vector<std::optional<MatrixF>> nilpotent_characteristic_sweep(const Operator& nilpotent,
                                                                   std::span<const Subspace> xs,
                                                                   std::uint64_t cap) {
  std::vector<std::optional<MatrixF>> out(xs.size());
  std::vector<std::size_t> alive;
  for (std::size_t s = 0; s < xs.size(); ++s)
    if (!xs[s].is_zero() && !xs[s].is_whole()) alive.push_back(s);
  if (alive.empty()) return out;
  require_tuple_cap(nilpotent, cap);

  const JordanStructure canonical = jordan_structure(nilpotent);
  const MatrixF j0 = jordan_basis_matrix(nilpotent, canonical);
  const MatrixF j0_inv = *j0.inverse();
  const std::size_t n = nilpotent.dim();

  detail::with_packed_ops(nilpotent.field(), n, [&](const auto& ops) {
    using Ops = std::decay_t<decltype(ops)>;
    using Vec = typename Ops::Vec;
    struct Target {
      std::size_t index;
      std::vector<SparseCoords> coords;  // Jordan coordinates of X's basis
      PackedEchelon<Ops> echelon;
    };
    std::vector<Target> targets;
    for (std::size_t s : alive) {
      Target tgt{s, {}, PackedEchelon<Ops>::from(ops, xs[s])};
      for (std::size_t b = 0; b < xs[s].dim(); ++b) tgt.coords.push_back(sparse(j0_inv * xs[s].basis_vector(b)));
      targets.push_back(std::move(tgt));
    }
    PackedMap<Ops> f(ops, nilpotent.matrix());
    TupleWalker<Ops> walker(ops, nilpotent, canonical);
    std::vector<Vec> chain;
    std::size_t remaining = targets.size();
    std::vector<bool> done(targets.size(), false);
    walker.run([&](const std::vector<Vec>& u) {
      chain_vectors(ops, f, canonical.exponents, u, chain);
      for (std::size_t q = 0; q < targets.size(); ++q) {
        if (done[q]) continue;
        const Target& tgt = targets[q];
        for (const SparseCoords& c : tgt.coords) {
          Vec y = ops.zero();
          for (std::size_t e = 0; e < c.index.size(); ++e) y = ops.add(y, ops.scale(c.coeff[e], chain[c.index[e]]));
          if (!tgt.echelon.contains(ops, y)) {
            JordanStructure moved = unpack_tuple(ops, canonical.exponents, u);
            out[tgt.index] = jordan_basis_matrix(nilpotent, moved) * j0_inv;
            done[q] = true;
            --remaining;
            break;
          }
        }
      }
      return remaining > 0;
    });
    return 0;
  });
  return out;
}

/// Ambient matrix acting as `local` on component c and as the identity on the others.
MatrixF lift_component_map(const std::vector<EigenComponent>& comps, std::size_t c, const MatrixF& local) {
  const PrimeField field = comps.front().space.field();
  const std::size_t n = comps.front().space.ambient_dim();
  std::vector<VectorF> columns;
  for (const auto& comp : comps)
    for (std::size_t j = 0; j < comp.component_basis.cols(); ++j) columns.push_back(comp.component_basis.col(j));
  const MatrixF p = MatrixF::from_columns(field, n, columns);
  MatrixF d = MatrixF::identity(field, n);
  std::size_t offset = 0;
  for (std::size_t k = 0; k < c; ++k) offset += comps[k].space.dim();
  for (std::size_t a = 0; a < local.rows(); ++a)
    for (std::size_t b = 0; b < local.cols(); ++b) d(offset + a, offset + b) = local(a, b);
  return p * d * *p.inverse();
}

}  // namespace

void for_each_generator_tuple(const Operator& nilpotent, const std::function<bool(const JordanStructure&)>& visit,
                              std::uint64_t cap) {
  require_tuple_cap(nilpotent, cap);
  const JordanStructure canonical = jordan_structure(nilpotent);
  detail::with_packed_ops(nilpotent.field(), nilpotent.dim(), [&](const auto& ops) {
    using Ops = std::decay_t<decltype(ops)>;
    TupleWalker<Ops> walker(ops, nilpotent, canonical);
    walker.run([&](const std::vector<typename Ops::Vec>& u) {
      return visit(unpack_tuple(ops, canonical.exponents, u));
    });
    return 0;
  });
}

std::vector<JordanStructure> enumerate_generator_tuples(const Operator& nilpotent, std::uint64_t cap) {
  std::vector<JordanStructure> out;
  for_each_generator_tuple(
      nilpotent,
      [&](const JordanStructure& u) {
        out.push_back(u);
        return true;
      },
      cap);
  return out;
}

std::uint64_t enumerate_count_generator_tuples(const Operator& nilpotent, std::uint64_t cap) {
  require_tuple_cap(nilpotent, cap);
  const JordanStructure canonical = jordan_structure(nilpotent);
  std::uint64_t count = 0;
  detail::with_packed_ops(nilpotent.field(), nilpotent.dim(), [&](const auto& ops) {
    using Ops = std::decay_t<decltype(ops)>;
    TupleWalker<Ops> walker(ops, nilpotent, canonical);
    walker.run([&](const std::vector<typename Ops::Vec>&) {
      ++count;
      return true;
    });
    return 0;
  });
  return count;
}

std::uint64_t enumerate_count_invertible_commutant(const Operator& f, std::uint64_t cap) {
  const CommutantBasis comm = commutant_basis(f);
  const unsigned p = f.field().modulus();
  if (!bounded_power(p, comm.dim(), cap)) {
    fail(ErrorCode::EnumerationTooLarge, "commutant of dimension " + std::to_string(comm.dim()) +
                                             " has more than " + std::to_string(cap) + " members");
  }
  const std::size_t n = f.dim();
  std::uint64_t count = 0;
  detail::with_packed_ops(f.field(), n, [&](const auto& ops) {
    using Ops = std::decay_t<decltype(ops)>;
    using Vec = typename Ops::Vec;
    std::vector<std::vector<Vec>> basis;
    for (const MatrixF& g : comm.basis) basis.push_back(PackedMap<Ops>(ops, g).columns);
    std::vector<Vec> g(n, ops.zero());
    std::vector<unsigned> digit(comm.dim(), 0);
    while (true) {
      PackedEchelon<Ops> e;
      std::size_t rank = 0;
      for (const Vec& col : g) rank += e.insert(ops, col) ? 1 : 0;
      if (rank == n) ++count;
      std::size_t j = 0;
      for (; j < comm.dim(); ++j) {
        for (std::size_t c = 0; c < n; ++c) g[c] = ops.add(g[c], basis[j][c]);
        if (++digit[j] < p) break;
        digit[j] = 0;
      }
      if (j == comm.dim()) break;
    }
    return 0;
  });
  return count;
}

MatrixF theta_automorphism(const Operator& nilpotent, const JordanStructure& u, const JordanStructure& u_tilde) {
  if (!is_generator_tuple(nilpotent, u) || !is_generator_tuple(nilpotent, u_tilde)) {
    fail(ErrorCode::NotGeneratorTuple, "both tuples must be generator tuples of the operator");
  }
  return jordan_basis_matrix(nilpotent, u_tilde) * *jordan_basis_matrix(nilpotent, u).inverse();
}

namespace {

/// The canonical tuple moved by each generating automorphism.
std::vector<JordanStructure> generator_moves(const Operator& nilpotent, const JordanStructure& u) {
  const PrimeField field = nilpotent.field();
  const auto& t = u.exponents;
  const std::size_t k = u.size();
  std::vector<JordanStructure> out;
  if (field.modulus() > 2) {
    const std::uint8_t a = primitive_element(field);
    for (std::size_t i = 0; i < k; ++i) {
      JordanStructure m = u;
      m.generators[i] = u.generators[i].scaled(a);
      out.push_back(std::move(m));
    }
  }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      const std::size_t from = (l == i) ? 1 : (t[l] > t[i] ? t[l] - t[i] : 0);
      for (std::size_t j = from; j < t[l]; ++j) {
        JordanStructure m = u;
        m.generators[i] = u.generators[i] + nilpotent.apply_power(j, u.generators[l]);
        out.push_back(std::move(m));
      }
    }
  return out;
}

}  // namespace

std::vector<MatrixF> generating_automorphisms(const Operator& nilpotent) {
  const JordanStructure canonical = jordan_structure(nilpotent);
  const MatrixF j0_inv = *jordan_basis_matrix(nilpotent, canonical).inverse();
  std::vector<MatrixF> out;
  for (const JordanStructure& m : generator_moves(nilpotent, canonical)) {
    out.push_back(jordan_basis_matrix(nilpotent, m) * j0_inv);
  }
  return out;
}

std::optional<MatrixF> moving_generator(const Operator& nilpotent, const Subspace& x) {
  for (const MatrixF& alpha : generating_automorphisms(nilpotent))
    if (!maps_into(alpha, x, x)) return alpha;
  return std::nullopt;
}

// ---------------------------------------------------------------- characteristic subspaces

std::vector<CharacteristicResult> characteristic_batch(const Operator& f, std::span<const Subspace> xs,
                                                       const SearchOptions& opts) {
  for (const Subspace& x : xs) require_invariant(f, x);
  std::vector<CharacteristicResult> out(xs.size());
  const auto comps = decompose(f);

  if (f.field().modulus() > 2 && !opts.force_bruteforce) {
    for (std::size_t s = 0; s < xs.size(); ++s) {
      out[s].value = is_hyperinvariant(f, xs[s], opts).value;
      if (out[s].value) continue;
      for (std::size_t c = 0; c < comps.size() && !out[s].witness; ++c) {
        const Subspace local = comps[c].localize(intersect(xs[s], comps[c].space));
        if (auto alpha = moving_generator(comps[c].restriction, local)) {
          out[s].witness = lift_component_map(comps, c, *alpha);
        }
      }
      if (!out[s].witness) throw std::logic_error("no automorphism moves a subspace that is not hyperinvariant");
    }
    return out;
  }

  for (std::size_t c = 0; c < comps.size(); ++c) {
    std::vector<Subspace> locals;
    for (const Subspace& x : xs) locals.push_back(comps[c].localize(intersect(x, comps[c].space)));
    auto moved = nilpotent_characteristic_sweep(comps[c].restriction, locals, opts.automorphism_cap);
    for (std::size_t s = 0; s < xs.size(); ++s) {
      out[s].enumerated = true;
      if (moved[s] && out[s].value) {
        out[s].value = false;
        out[s].witness = comps.size() == 1 ? *moved[s] : lift_component_map(comps, c, *moved[s]);
      }
    }
  }
  return out;
}

CharacteristicResult is_characteristic(const Operator& f, const Subspace& x, const SearchOptions& opts) {
  return characteristic_batch(f, std::span<const Subspace>(&x, 1), opts).front();
}

// ---------------------------------------------------------------- uniformity

std::vector<UniformityResult> uniform_over_tuples(const Operator& nilpotent, std::span<const ExponentTuple> rs,
                                                  const SearchOptions& opts) {
  const JordanStructure canonical = jordan_structure(nilpotent);
  std::vector<Subspace> base;
  for (const ExponentTuple& r : rs) base.push_back(build_W_rU(nilpotent, canonical, r));
  std::vector<UniformityResult> out(rs.size());

  if (count_generator_tuples(nilpotent) > opts.automorphism_cap) {
    const auto moves = generator_moves(nilpotent, canonical);
    for (std::size_t q = 0; q < rs.size(); ++q) {
      for (const JordanStructure& m : moves) {
        if (build_W_rU(nilpotent, m, rs[q]) != base[q]) {
          out[q].value = false;
          out[q].witness = m;
          break;
        }
      }
    }
    return out;
  }

  const std::size_t n = nilpotent.dim();
  detail::with_packed_ops(nilpotent.field(), n, [&](const auto& ops) {
    using Ops = std::decay_t<decltype(ops)>;
    using Vec = typename Ops::Vec;
    std::vector<PackedMap<Ops>> powers;
    for (std::size_t j = 0; j <= n; ++j) powers.emplace_back(ops, nilpotent.power(j));
    std::vector<PackedEchelon<Ops>> echelons;
    for (const Subspace& w : base) echelons.push_back(PackedEchelon<Ops>::from(ops, w));
    for (auto& o : out) o.enumerated = true;
    std::vector<std::size_t> alive(rs.size());
    std::iota(alive.begin(), alive.end(), std::size_t{0});
    TupleWalker<Ops> walker(ops, nilpotent, canonical);
    walker.run([&](const std::vector<Vec>& u) {
      for (std::size_t a = 0; a < alive.size();) {
        const std::size_t q = alive[a];
        bool inside = true;
        for (std::size_t i = 0; i < u.size() && inside; ++i) {
          const Vec v = powers[std::size_t(rs[q][i])].apply(ops, u[i]);
          inside = echelons[q].contains(ops, v);
        }
        if (inside) {
          ++a;
          continue;
        }
        out[q].value = false;
        out[q].witness = unpack_tuple(ops, canonical.exponents, u);
        alive[a] = alive.back();
        alive.pop_back();
      }
      return !alive.empty();
    });
    return 0;
  });
  return out;
}

// ---------------------------------------------------------------- decompositions

bool check_distributivity(const Operator& f, const Subspace& x, std::span<const Subspace> parts) {
  const std::size_t n = f.dim();
  Subspace total = Subspace::zero(f.field(), n);
  std::size_t dims = 0;
  for (const Subspace& part : parts) {
    if (part.ambient_dim() != n || !is_invariant(f, part)) {
      fail(ErrorCode::NotADecomposition, "decomposition part is not an invariant subspace: " + part.to_string());
    }
    total = sum(total, part);
    dims += part.dim();
  }
  if (!total.is_whole() || dims != n) fail(ErrorCode::NotADecomposition, "parts do not form a direct sum equal to V");
  Subspace pieces = Subspace::zero(f.field(), n);
  for (const Subspace& part : parts) pieces = sum(pieces, intersect(x, part));
  return pieces == x;
}

std::vector<Subspace> cyclic_parts(const Operator& nilpotent, const JordanStructure& u) {
  std::vector<Subspace> out;
  for (const VectorF& g : u.generators) out.push_back(cyclic_subspace(nilpotent, g));
  return out;
}

std::optional<JordanStructure> nondistributive_tuple(const Operator& nilpotent, const Subspace& x,
                                                     const SearchOptions& opts) {
  require_invariant(nilpotent, x);
  auto splits = [&](const JordanStructure& u) { return check_distributivity(nilpotent, x, cyclic_parts(nilpotent, u)); };

  std::vector<JordanStructure> seeds{jordan_structure(nilpotent)};
  const MarkedResult marked = is_marked(nilpotent, x, opts.marked_budget);
  if (marked.witness) {
    seeds.push_back(marked.witness->tuple);
    if (!marked.witness->r.monotone()) {
      seeds.push_back(non_monotone_witness(nilpotent, marked.witness->tuple, marked.witness->r));
    }
  }
  const auto generators = generating_automorphisms(nilpotent);
  for (const JordanStructure& seed : seeds) {
    if (!splits(seed)) return seed;
    for (const MatrixF& alpha : generators) {
      JordanStructure moved = seed;
      for (auto& g : moved.generators) g = alpha * g;
      if (!splits(moved)) return moved;
    }
  }
  std::optional<JordanStructure> found;
  for_each_generator_tuple(
      nilpotent,
      [&](const JordanStructure& u) {
        if (splits(u)) return true;
        found = u;
        return false;
      },
      opts.automorphism_cap);
  return found;
}

std::optional<ExponentTuple> hyperinvariant_tuple(const Operator& nilpotent, const Subspace& x) {
  for (const ExponentTuple& r : admissible_tuples(nilpotent_exponents(nilpotent))) {
    if (r.monotone() && build_W_r(nilpotent, r) == x) return r;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- reports

ClassificationReport decompose_and_classify(const Operator& f, const Subspace& x, const SearchOptions& opts) {
  if (x.ambient_dim() != f.dim()) fail(ErrorCode::AmbientMismatch, "subspace ambient differs from operator size");
  require_invariant(f, x);
  ClassificationReport report;
  report.invariant = true;

  const auto comps = decompose(f);
  std::size_t split_dim = 0;
  bool all_hyper = true, all_char = true;
  bool any_unknown = false, any_unmarked = false;
  for (std::size_t c = 0; c < comps.size(); ++c) {
    const EigenComponent& comp = comps[c];
    ComponentReport cr{comp.lambda, comp.localize(intersect(x, comp.space)), Verdict::No, false, false, std::nullopt, std::nullopt};
    split_dim += cr.local.dim();

    MarkedResult m = is_marked(comp.restriction, cr.local, opts.marked_budget);
    cr.marked = m.verdict;
    cr.marked_witness = std::move(m.witness);
    any_unknown = any_unknown || cr.marked == Verdict::Unknown;
    any_unmarked = any_unmarked || cr.marked == Verdict::No;

    cr.hyperinvariant = is_hyperinvariant(comp.restriction, cr.local, opts).value;
    if (cr.hyperinvariant) {
      cr.hyperinvariant_r = hyperinvariant_tuple(comp.restriction, cr.local);
      if (!cr.hyperinvariant_r) throw std::logic_error("hyperinvariant subspace that is no W(r) with monotone r");
    }
    CharacteristicResult ch = is_characteristic(comp.restriction, cr.local, opts);
    cr.characteristic = ch.value;
    report.characteristic_enumerated = report.characteristic_enumerated || ch.enumerated;
    if (!ch.value && !report.automorphism_witness) {
      report.automorphism_witness = comps.size() == 1 ? *ch.witness : lift_component_map(comps, c, *ch.witness);
    }
    all_hyper = all_hyper && cr.hyperinvariant;
    all_char = all_char && cr.characteristic;
    report.components.push_back(std::move(cr));
  }
  if (split_dim != x.dim()) {
    fail(ErrorCode::ComponentSplitFailed, "X is not the direct sum of its generalized eigenspace components");
  }

  HyperinvariantResult direct = is_hyperinvariant(f, x, opts);
  if (direct.value != all_hyper) throw std::logic_error("componentwise and direct hyperinvariance disagree");
  report.endomorphism_witness = std::move(direct.witness);

  report.hyperinvariant = all_hyper ? Verdict::Yes : Verdict::No;
  report.characteristic = all_char ? Verdict::Yes : Verdict::No;
  report.marked = any_unmarked ? Verdict::No : (any_unknown ? Verdict::Unknown : Verdict::Yes);

  if (report.hyperinvariant == Verdict::Yes &&
      (report.characteristic != Verdict::Yes || report.marked == Verdict::No)) {
    throw std::logic_error("hyperinvariant subspace reported as not characteristic or not marked");
  }
  return report;
}

}  // namespace hinv
