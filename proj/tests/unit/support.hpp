#pragma once

#include "hinv/exactla.hpp"
#include "../oracles/brute.hpp"

namespace testutil {

inline hinv::MatrixF to_matrix(hinv::PrimeField f, const oracle::Mat& m) {
  std::vector<std::vector<long long>> rows;
  for (const auto& r : m) rows.emplace_back(r.begin(), r.end());
  return hinv::MatrixF::from_ints(f, rows);
}

inline oracle::Mat to_ints(const hinv::MatrixF& m) {
  oracle::Mat out(m.rows(), std::vector<int>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
  return out;
}

inline oracle::Vec to_ints(const hinv::VectorF& v) { return oracle::Vec(v.raw().begin(), v.raw().end()); }

inline hinv::VectorF to_vector(hinv::PrimeField f, const oracle::Vec& v) {
  std::vector<long long> w(v.begin(), v.end());
  return hinv::VectorF::from_ints(f, w);
}

/// The vectors of a library subspace, computed by the oracle from its basis.
inline oracle::VecSet as_set(const hinv::Subspace& s) {
  std::vector<oracle::Vec> gens;
  for (const auto& b : s.basis_vectors()) gens.push_back(to_ints(b));
  return oracle::span_set(int(s.field().modulus()), s.ambient_dim(), gens);
}

inline hinv::Subspace from_set(hinv::PrimeField f, std::size_t n, const oracle::VecSet& s) {
  std::vector<hinv::VectorF> gens;
  for (const auto& v : s) gens.push_back(to_vector(f, v));
  return hinv::Subspace::span(f, n, gens);
}

inline hinv::VectorF vec(hinv::PrimeField f, std::initializer_list<long long> v) { return hinv::VectorF::from_ints(f, v); }

}  // namespace testutil
