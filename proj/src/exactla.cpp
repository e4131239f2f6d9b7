#include "hinv/exactla.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <utility>

namespace hinv {

namespace {

void require_same_field(PrimeField a, PrimeField b) {
  if (a != b) {
    fail(ErrorCode::FieldMismatch,
         "GF(" + std::to_string(a.modulus()) + ") vs GF(" + std::to_string(b.modulus()) + ")");
  }
}

void require_same_ambient(const Subspace& a, const Subspace& b) {
  require_same_field(a.field(), b.field());
  if (a.ambient_dim() != b.ambient_dim()) {
    fail(ErrorCode::AmbientMismatch, "ambient dimensions " + std::to_string(a.ambient_dim()) +
                                         " and " + std::to_string(b.ambient_dim()));
  }
}

}  // namespace

// ---------------------------------------------------------------- VectorF

VectorF::VectorF(PrimeField field, std::vector<std::uint8_t> entries)
    : field_(field), entries_(std::move(entries)) {
  for (auto& e : entries_) e = field_.reduce(e);
}

VectorF VectorF::from_ints(PrimeField field, std::span<const long long> values) {
  VectorF v(field, values.size());
  for (std::size_t i = 0; i < values.size(); ++i) v.entries_[i] = field.reduce(values[i]);
  return v;
}

VectorF VectorF::unit(PrimeField field, std::size_t n, std::size_t i) {
  VectorF v(field, n);
  v.entries_.at(i) = 1;
  return v;
}

bool VectorF::is_zero() const noexcept {
  return std::all_of(entries_.begin(), entries_.end(), [](std::uint8_t e) { return e == 0; });
}

std::size_t VectorF::leading_index() const noexcept {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i] != 0) return i;
  }
  return entries_.size();
}

VectorF& VectorF::operator+=(const VectorF& other) { return add_scaled(1, other); }

VectorF& VectorF::operator-=(const VectorF& other) {
  require_same_field(field_, other.field_);
  if (size() != other.size()) fail(ErrorCode::DimensionMismatch, "vector lengths differ");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] = field_.sub(entries_[i], other.entries_[i]);
  return *this;
}

VectorF& VectorF::add_scaled(std::uint8_t c, const VectorF& other) {
  require_same_field(field_, other.field_);
  if (size() != other.size()) fail(ErrorCode::DimensionMismatch, "vector lengths differ");
  if (c == 0) return *this;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (other.entries_[i] != 0) entries_[i] = field_.add(entries_[i], field_.mul(c, other.entries_[i]));
  }
  return *this;
}

VectorF VectorF::scaled(std::uint8_t c) const {
  VectorF out(field_, size());
  for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] = field_.mul(c, entries_[i]);
  return out;
}

std::string VectorF::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) os << ", ";
    os << unsigned(entries_[i]);
  }
  os << ')';
  return os.str();
}

// ---------------------------------------------------------------- MatrixF

MatrixF MatrixF::identity(PrimeField field, std::size_t n) {
  MatrixF m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

MatrixF MatrixF::from_ints(PrimeField field, const std::vector<std::vector<long long>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r ? rows.front().size() : 0;
  MatrixF m(field, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) fail(ErrorCode::DimensionMismatch, "ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = field.reduce(rows[i][j]);
  }
  return m;
}

MatrixF MatrixF::from_rows(PrimeField field, std::size_t cols, std::span<const VectorF> rows) {
  MatrixF m(field, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    require_same_field(field, rows[i].field());
    if (rows[i].size() != cols) fail(ErrorCode::DimensionMismatch, "row length mismatch");
    std::copy(rows[i].raw().begin(), rows[i].raw().end(), m.data_.begin() + std::ptrdiff_t(i * cols));
  }
  return m;
}

MatrixF MatrixF::from_columns(PrimeField field, std::size_t rows, std::span<const VectorF> cols) {
  MatrixF m(field, rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    require_same_field(field, cols[j].field());
    if (cols[j].size() != rows) fail(ErrorCode::DimensionMismatch, "column length mismatch");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

MatrixF MatrixF::diagonal(PrimeField field, std::span<const long long> entries) {
  MatrixF m(field, entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = field.reduce(entries[i]);
  return m;
}

Scalar MatrixF::at(std::size_t i, std::size_t j) const {
  if (i >= rows_ || j >= cols_) fail(ErrorCode::DimensionMismatch, "matrix index out of range");
  return Scalar(field_, (*this)(i, j));
}

VectorF MatrixF::row(std::size_t i) const {
  auto r = row_span(i);
  return VectorF(field_, std::vector<std::uint8_t>(r.begin(), r.end()));
}

VectorF MatrixF::col(std::size_t j) const {
  std::vector<std::uint8_t> c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return VectorF(field_, std::move(c));
}

std::vector<VectorF> MatrixF::row_vectors() const {
  std::vector<VectorF> out;
  out.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
  return out;
}

MatrixF MatrixF::transpose() const {
  MatrixF t(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool MatrixF::is_zero() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](std::uint8_t e) { return e == 0; });
}

std::size_t MatrixF::rank() const { return rref_with_pivots(*this).pivots.size(); }

Scalar MatrixF::determinant() const {
  if (!is_square()) fail(ErrorCode::DimensionMismatch, "determinant of a non-square matrix");
  MatrixF a = *this;
  const std::size_t n = rows_;
  std::uint8_t det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a(piv, c) == 0) ++piv;
    if (piv == n) return Scalar(field_, 0);
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(c, j));
      det = field_.neg(det);
    }
    det = field_.mul(det, a(c, c));
    const std::uint8_t inv = field_.inv(a(c, c));
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a(i, c) == 0) continue;
      const std::uint8_t factor = field_.mul(a(i, c), inv);
      for (std::size_t j = c; j < n; ++j) a(i, j) = field_.sub(a(i, j), field_.mul(factor, a(c, j)));
    }
  }
  return Scalar(field_, det);
}

std::optional<MatrixF> MatrixF::inverse() const {
  if (!is_square()) fail(ErrorCode::DimensionMismatch, "inverse of a non-square matrix");
  const std::size_t n = rows_;
  MatrixF aug(field_, n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = (*this)(i, j);
    aug(i, n + i) = 1;
  }
  RrefResult r = rref_with_pivots(aug);
  if (r.pivots.size() < n || r.pivots[n - 1] != n - 1) return std::nullopt;
  MatrixF inv(field_, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = r.reduced(i, n + j);
  return inv;
}

MatrixF MatrixF::pow(std::size_t k) const {
  if (!is_square()) fail(ErrorCode::DimensionMismatch, "power of a non-square matrix");
  MatrixF result = identity(field_, rows_);
  MatrixF base = *this;
  while (k) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

MatrixF& MatrixF::operator+=(const MatrixF& other) {
  require_same_field(field_, other.field_);
  if (rows_ != other.rows_ || cols_ != other.cols_) fail(ErrorCode::DimensionMismatch, "matrix shapes differ");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] = field_.add(data_[i], other.data_[i]);
  return *this;
}

MatrixF& MatrixF::operator-=(const MatrixF& other) {
  require_same_field(field_, other.field_);
  if (rows_ != other.rows_ || cols_ != other.cols_) fail(ErrorCode::DimensionMismatch, "matrix shapes differ");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] = field_.sub(data_[i], other.data_[i]);
  return *this;
}

MatrixF MatrixF::scaled(std::uint8_t c) const {
  MatrixF out = *this;
  for (auto& e : out.data_) e = field_.mul(c, e);
  return out;
}

MatrixF operator*(const MatrixF& a, const MatrixF& b) {
  require_same_field(a.field_, b.field_);
  if (a.cols_ != b.rows_) fail(ErrorCode::DimensionMismatch, "matrix product shape mismatch");
  const PrimeField f = a.field_;
  MatrixF out(f, a.rows_, b.cols_);
  // Accumulate in 32-bit and reduce once per entry.
  std::vector<std::uint32_t> acc(b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    std::fill(acc.begin(), acc.end(), 0);
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const std::uint32_t aik = a(i, k);
      if (aik == 0) continue;
      const std::uint8_t* brow = b.data_.data() + k * b.cols_;
      for (std::size_t j = 0; j < b.cols_; ++j) acc[j] += aik * brow[j];
      if (k % 64 == 63) {
        for (auto& x : acc) x %= f.modulus();
      }
    }
    for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) = std::uint8_t(acc[j] % f.modulus());
  }
  return out;
}

VectorF operator*(const MatrixF& a, const VectorF& v) {
  require_same_field(a.field_, v.field());
  if (a.cols_ != v.size()) fail(ErrorCode::DimensionMismatch, "matrix-vector shape mismatch");
  const PrimeField f = a.field_;
  std::vector<std::uint8_t> out(a.rows_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    std::uint32_t acc = 0;
    const std::uint8_t* row = a.data_.data() + i * a.cols_;
    for (std::size_t j = 0; j < a.cols_; ++j) {
      acc += std::uint32_t(row[j]) * v[j];
      if (j % 64 == 63) acc %= f.modulus();
    }
    out[i] = std::uint8_t(acc % f.modulus());
  }
  return VectorF(f, std::move(out));
}

std::strong_ordering operator<=>(const MatrixF& a, const MatrixF& b) {
  if (auto c = a.rows_ <=> b.rows_; c != 0) return c;
  if (auto c = a.cols_ <=> b.cols_; c != 0) return c;
  return a.data_ <=> b.data_;
}

std::string MatrixF::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) os << ", ";
    os << row(i).to_string();
  }
  os << ']';
  return os.str();
}

// ---------------------------------------------------------------- RREF

namespace detail {

RrefResult rref_generic(const MatrixF& m) {
  const PrimeField f = m.field();
  MatrixF a = m;
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a(piv, c) == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(a(piv, j), a(r, j));
    }
    const std::uint8_t inv = f.inv(a(r, c));
    for (std::size_t j = c; j < cols; ++j) a(r, j) = f.mul(a(r, j), inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a(i, c) == 0) continue;
      const std::uint8_t factor = a(i, c);
      for (std::size_t j = c; j < cols; ++j) a(i, j) = f.sub(a(i, j), f.mul(factor, a(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  MatrixF reduced(f, r, cols);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < cols; ++j) reduced(i, j) = a(i, j);
  return {std::move(reduced), std::move(pivots)};
}

RrefResult rref_gf2(const MatrixF& m) {
  if (m.field().modulus() != 2) fail(ErrorCode::FieldMismatch, "bit-packed reduction needs GF(2)");
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  const std::size_t words = (cols + 63) / 64;
  std::vector<std::uint64_t> bits(rows * words, 0);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (m(i, j)) bits[i * words + j / 64] |= std::uint64_t{1} << (j % 64);

  auto row_ptr = [&](std::size_t i) { return bits.data() + i * words; };
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    const std::size_t w = c / 64;
    const std::uint64_t mask = std::uint64_t{1} << (c % 64);
    std::size_t piv = r;
    while (piv < rows && !(row_ptr(piv)[w] & mask)) ++piv;
    if (piv == rows) continue;
    if (piv != r) std::swap_ranges(row_ptr(piv), row_ptr(piv) + words, row_ptr(r));
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || !(row_ptr(i)[w] & mask)) continue;
      for (std::size_t k = w; k < words; ++k) row_ptr(i)[k] ^= row_ptr(r)[k];
    }
    pivots.push_back(c);
    ++r;
  }
  MatrixF reduced(m.field(), r, cols);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < cols; ++j) reduced(i, j) = std::uint8_t((row_ptr(i)[j / 64] >> (j % 64)) & 1);
  return {std::move(reduced), std::move(pivots)};
}

}  // namespace detail

RrefResult rref_with_pivots(const MatrixF& m) {
  return m.field().modulus() == 2 ? detail::rref_gf2(m) : detail::rref_generic(m);
}

MatrixF rref(const MatrixF& m) { return rref_with_pivots(m).reduced; }

// ---------------------------------------------------------------- Subspace

Subspace Subspace::zero(PrimeField field, std::size_t n) { return Subspace(MatrixF(field, 0, n), {}); }

Subspace Subspace::whole(PrimeField field, std::size_t n) {
  std::vector<std::size_t> piv(n);
  for (std::size_t i = 0; i < n; ++i) piv[i] = i;
  return Subspace(MatrixF::identity(field, n), std::move(piv));
}

Subspace Subspace::row_space(const MatrixF& rows) {
  RrefResult r = rref_with_pivots(rows);
  return Subspace(std::move(r.reduced), std::move(r.pivots));
}

Subspace Subspace::span(PrimeField field, std::size_t n, std::span<const VectorF> vectors) {
  return row_space(MatrixF::from_rows(field, n, vectors));
}

VectorF Subspace::reduce(const VectorF& v) const {
  require_same_field(field(), v.field());
  if (v.size() != ambient_dim()) fail(ErrorCode::AmbientMismatch, "vector length differs from ambient dimension");
  const PrimeField f = field();
  std::vector<std::uint8_t> out(v.raw().begin(), v.raw().end());
  for (std::size_t i = 0; i < dim(); ++i) {
    const std::uint8_t c = out[pivots_[i]];
    if (c == 0) continue;
    auto row = basis_.row_span(i);
    for (std::size_t j = pivots_[i]; j < out.size(); ++j) {
      if (row[j]) out[j] = f.sub(out[j], f.mul(c, row[j]));
    }
  }
  return VectorF(f, std::move(out));
}

bool Subspace::contains(const VectorF& v) const { return reduce(v).is_zero(); }

bool Subspace::is_subspace_of(const Subspace& other) const {
  require_same_ambient(*this, other);
  if (dim() > other.dim()) return false;
  for (std::size_t i = 0; i < dim(); ++i) {
    if (!other.contains(basis_.row(i))) return false;
  }
  return true;
}

std::optional<std::vector<std::uint8_t>> Subspace::coordinates(const VectorF& v) const {
  if (!contains(v)) return std::nullopt;
  std::vector<std::uint8_t> c(dim());
  for (std::size_t i = 0; i < dim(); ++i) c[i] = v[pivots_[i]];
  return c;
}

VectorF Subspace::combine(std::span<const std::uint8_t> coefficients) const {
  if (coefficients.size() != dim()) fail(ErrorCode::DimensionMismatch, "coefficient count differs from dimension");
  const PrimeField f = field();
  const std::size_t n = ambient_dim();
  std::vector<std::uint32_t> acc(n, 0);
  for (std::size_t i = 0; i < dim(); ++i) {
    if (coefficients[i] == 0) continue;
    auto row = basis_.row_span(i);
    for (std::size_t j = 0; j < n; ++j) acc[j] += std::uint32_t(coefficients[i]) * row[j];
  }
  std::vector<std::uint8_t> out(n);
  for (std::size_t j = 0; j < n; ++j) out[j] = std::uint8_t(acc[j] % f.modulus());
  return VectorF(f, std::move(out));
}

std::strong_ordering operator<=>(const Subspace& a, const Subspace& b) {
  if (auto c = a.dim() <=> b.dim(); c != 0) return c;
  return a.basis_ <=> b.basis_;
}

std::string Subspace::to_string() const {
  if (is_zero()) return "{0}";
  std::ostringstream os;
  os << "span{";
  for (std::size_t i = 0; i < dim(); ++i) {
    if (i) os << ", ";
    os << basis_.row(i).to_string();
  }
  os << '}';
  return os.str();
}

std::size_t SubspaceHash::operator()(const Subspace& s) const noexcept {
  std::size_t h = std::hash<std::size_t>{}(s.ambient_dim() * 131 + s.dim());
  const MatrixF& b = s.basis();
  for (std::size_t i = 0; i < b.rows(); ++i) {
    for (std::uint8_t e : b.row_span(i)) h = h * 1099511628211ULL ^ e;
  }
  return h;
}

// ---------------------------------------------------------------- subspace calculus

Subspace kernel(const MatrixF& m) {
  const PrimeField f = m.field();
  const std::size_t n = m.cols();
  RrefResult r = rref_with_pivots(m);
  std::vector<bool> is_pivot(n, false);
  for (std::size_t p : r.pivots) is_pivot[p] = true;
  std::vector<VectorF> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    VectorF v(f, n);
    v.set(free, 1);
    for (std::size_t i = 0; i < r.pivots.size(); ++i) {
      if (r.reduced(i, free)) v.set(r.pivots[i], f.neg(r.reduced(i, free)));
    }
    basis.push_back(std::move(v));
  }
  return Subspace::span(f, n, basis);
}

Subspace image(const MatrixF& m) { return Subspace::row_space(m.transpose()); }

Subspace sum(const Subspace& a, const Subspace& b) {
  require_same_ambient(a, b);
  std::vector<VectorF> rows = a.basis_vectors();
  for (auto& v : b.basis_vectors()) rows.push_back(std::move(v));
  return Subspace::span(a.field(), a.ambient_dim(), rows);
}

Subspace intersect(const Subspace& a, const Subspace& b) {
  require_same_ambient(a, b);
  const PrimeField f = a.field();
  const std::size_t n = a.ambient_dim();
  // Zassenhaus: rows (a | a) and (b | 0); after reduction the rows whose left
  // half vanishes carry a basis of the intersection in their right half.
  MatrixF block(f, a.dim() + b.dim(), 2 * n);
  for (std::size_t i = 0; i < a.dim(); ++i) {
    auto row = a.basis().row_span(i);
    for (std::size_t j = 0; j < n; ++j) {
      block(i, j) = row[j];
      block(i, n + j) = row[j];
    }
  }
  for (std::size_t i = 0; i < b.dim(); ++i) {
    auto row = b.basis().row_span(i);
    for (std::size_t j = 0; j < n; ++j) block(a.dim() + i, j) = row[j];
  }
  RrefResult r = rref_with_pivots(block);
  std::vector<VectorF> meet;
  for (std::size_t i = 0; i < r.pivots.size(); ++i) {
    if (r.pivots[i] < n) continue;
    VectorF v(f, n);
    for (std::size_t j = 0; j < n; ++j) v.set(j, r.reduced(i, n + j));
    meet.push_back(std::move(v));
  }
  return Subspace::span(f, n, meet);
}

Subspace map_subspace(const MatrixF& m, const Subspace& x) {
  if (m.cols() != x.ambient_dim()) fail(ErrorCode::AmbientMismatch, "map domain differs from subspace ambient");
  std::vector<VectorF> images;
  images.reserve(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) images.push_back(m * x.basis_vector(i));
  return Subspace::span(m.field(), m.rows(), images);
}

MatrixF annihilator(const Subspace& x) {
  Subspace ann = kernel(x.basis());
  return ann.basis();
}

Subspace preimage(const MatrixF& m, const Subspace& x) {
  if (m.rows() != x.ambient_dim()) fail(ErrorCode::AmbientMismatch, "map codomain differs from subspace ambient");
  if (x.is_whole()) return Subspace::whole(m.field(), m.cols());
  return kernel(annihilator(x) * m);
}

bool maps_into(const MatrixF& m, const Subspace& x, const Subspace& y) {
  if (m.cols() != x.ambient_dim() || m.rows() != y.ambient_dim()) {
    fail(ErrorCode::AmbientMismatch, "map shape differs from subspace ambients");
  }
  for (std::size_t i = 0; i < x.dim(); ++i) {
    if (!y.contains(m * x.basis_vector(i))) return false;
  }
  return true;
}

std::optional<std::uint64_t> bounded_power(std::uint64_t p, std::size_t e, std::uint64_t cap) {
  std::uint64_t v = 1;
  for (std::size_t i = 0; i < e; ++i) {
    if (v > cap / p) return std::nullopt;
    v *= p;
  }
  if (v > cap) return std::nullopt;
  return v;
}

void for_each_vector(const Subspace& s, const std::function<bool(const VectorF&)>& visit, std::uint64_t cap) {
  const std::uint64_t p = s.field().modulus();
  if (!bounded_power(p, s.dim(), cap)) {
    fail(ErrorCode::EnumerationTooLarge, std::to_string(p) + "^" + std::to_string(s.dim()) +
                                             " vectors exceed the cap of " + std::to_string(cap));
  }
  const PrimeField f = s.field();
  const std::size_t d = s.dim();
  std::vector<std::uint8_t> coeffs(d, 0);
  VectorF current(f, s.ambient_dim());
  std::vector<VectorF> basis = s.basis_vectors();
  while (true) {
    if (!visit(current)) return;
    // Odometer step: bump the first coordinate, carrying into later ones.
    // Every digit change is +b_i; a wrap from p-1 to 0 is also +b_i since p*b_i = 0.
    std::size_t i = 0;
    for (; i < d; ++i) {
      current += basis[i];
      if (++coeffs[i] < p) break;
      coeffs[i] = 0;
    }
    if (i == d) return;
  }
}

std::vector<VectorF> enumerate_vectors(const Subspace& s, std::uint64_t cap) {
  std::vector<VectorF> out;
  for_each_vector(
      s,
      [&](const VectorF& v) {
        out.push_back(v);
        return true;
      },
      cap);
  return out;
}

}  // namespace hinv
