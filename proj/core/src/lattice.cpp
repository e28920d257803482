#include "toricsplit/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <ostream>
#include <sstream>

#include "toricsplit/checked.hpp"
#include "toricsplit/error.hpp"

namespace toricsplit {

std::int64_t gcd(std::int64_t a, std::int64_t b) {
  if (a == INT64_MIN || b == INT64_MIN) throw OverflowError("gcd of INT64_MIN");
  return std::gcd(a, b);
}

// ---------------------------------------------------------------------------
// LatticeVector

LatticeVector LatticeVector::unit(std::size_t dim, std::size_t i) {
  auto v = zero(dim);
  v.coords_.at(i) = 1;
  return v;
}

bool LatticeVector::is_zero() const noexcept {
  return std::all_of(coords_.begin(), coords_.end(), [](std::int64_t c) { return c == 0; });
}

std::int64_t LatticeVector::content() const {
  std::int64_t g = 0;
  for (auto c : coords_) g = gcd(g, c);
  return g;
}

LatticeVector LatticeVector::primitive() const {
  const auto g = content();
  if (g == 0) throw DimensionError("the zero vector has no primitive representative");
  std::vector<std::int64_t> out(coords_);
  for (auto& c : out) c /= g;
  return LatticeVector(std::move(out));
}

LatticeVector LatticeVector::operator+(const LatticeVector& o) const {
  if (dim() != o.dim()) throw DimensionError("vector addition with mismatched dimensions");
  std::vector<std::int64_t> out(dim());
  for (std::size_t i = 0; i < dim(); ++i) out[i] = checked::add(coords_[i], o.coords_[i]);
  return LatticeVector(std::move(out));
}

LatticeVector LatticeVector::operator-() const {
  std::vector<std::int64_t> out(dim());
  for (std::size_t i = 0; i < dim(); ++i) out[i] = checked::neg(coords_[i]);
  return LatticeVector(std::move(out));
}

LatticeVector LatticeVector::padded(std::size_t before, std::size_t after) const {
  std::vector<std::int64_t> out(before, 0);
  out.insert(out.end(), coords_.begin(), coords_.end());
  out.resize(out.size() + after, 0);
  return LatticeVector(std::move(out));
}

std::string LatticeVector::to_string() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const LatticeVector& v) {
  os << '(';
  for (std::size_t i = 0; i < v.dim(); ++i) os << (i ? "," : "") << v[i];
  return os << ')';
}

// ---------------------------------------------------------------------------
// IntegerMatrix

IntegerMatrix::IntegerMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionError("ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

IntegerMatrix IntegerMatrix::identity(std::size_t n) {
  IntegerMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntegerMatrix IntegerMatrix::from_columns(std::span<const LatticeVector> cols, std::size_t dim) {
  IntegerMatrix m(dim, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].dim() != dim) throw DimensionError("column " + std::to_string(c) + " has wrong dimension");
    for (std::size_t r = 0; r < dim; ++r) m(r, c) = cols[c][r];
  }
  return m;
}

IntegerMatrix IntegerMatrix::from_rows(std::span<const LatticeVector> rows, std::size_t dim) {
  IntegerMatrix m(rows.size(), dim);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].dim() != dim) throw DimensionError("row " + std::to_string(r) + " has wrong dimension");
    for (std::size_t c = 0; c < dim; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

LatticeVector IntegerMatrix::column(std::size_t c) const {
  std::vector<std::int64_t> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return LatticeVector(std::move(out));
}

LatticeVector IntegerMatrix::row(std::size_t r) const {
  return LatticeVector(std::vector<std::int64_t>(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_));
}

IntegerMatrix IntegerMatrix::transpose() const {
  IntegerMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

IntegerMatrix IntegerMatrix::operator*(const IntegerMatrix& o) const {
  if (cols_ != o.rows_) throw DimensionError("matrix product with mismatched shapes");
  IntegerMatrix out(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < o.cols_; ++j) {
      std::int64_t acc = 0;
      for (std::size_t k = 0; k < cols_; ++k) acc = checked::add(acc, checked::mul((*this)(i, k), o(k, j)));
      out(i, j) = acc;
    }
  return out;
}

LatticeVector IntegerMatrix::operator*(const LatticeVector& v) const {
  if (cols_ != v.dim()) throw DimensionError("matrix-vector product with mismatched shapes");
  std::vector<std::int64_t> out(rows_, 0);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) out[i] = checked::add(out[i], checked::mul((*this)(i, k), v[k]));
  return LatticeVector(std::move(out));
}

void IntegerMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
}

void IntegerMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
}

void IntegerMatrix::negate_row(std::size_t r) {
  for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = checked::neg((*this)(r, c));
}

void IntegerMatrix::negate_col(std::size_t c) {
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = checked::neg((*this)(r, c));
}

void IntegerMatrix::add_row_multiple(std::size_t dst, std::size_t src, std::int64_t factor) {
  if (factor == 0) return;
  for (std::size_t c = 0; c < cols_; ++c)
    (*this)(dst, c) = checked::add((*this)(dst, c), checked::mul(factor, (*this)(src, c)));
}

void IntegerMatrix::add_col_multiple(std::size_t dst, std::size_t src, std::int64_t factor) {
  if (factor == 0) return;
  for (std::size_t r = 0; r < rows_; ++r)
    (*this)(r, dst) = checked::add((*this)(r, dst), checked::mul(factor, (*this)(r, src)));
}

bool IntegerMatrix::is_diagonal() const {
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (r != c && (*this)(r, c) != 0) return false;
  return true;
}

std::string IntegerMatrix::to_string() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const IntegerMatrix& m) {
  os << '[';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    os << (r ? "," : "") << '[';
    for (std::size_t c = 0; c < m.cols(); ++c) os << (c ? "," : "") << m(r, c);
    os << ']';
  }
  return os << ']';
}

// ---------------------------------------------------------------------------
// Determinant, Smith form and friends

std::int64_t determinant(const IntegerMatrix& m) {
  if (!m.is_square()) throw DimensionError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntegerMatrix a = m;
  std::int64_t sign = 1;
  std::int64_t prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        const auto num = static_cast<checked::Int128>(a(i, j)) * a(k, k) - static_cast<checked::Int128>(a(i, k)) * a(k, j);
        // Bareiss: the division is exact.
        a(i, j) = checked::narrow(num / prev);
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return checked::mul(sign, a(n - 1, n - 1));
}

bool is_unimodular(const IntegerMatrix& m) {
  if (!m.is_square()) return false;
  const auto d = determinant(m);
  return d == 1 || d == -1;
}

std::vector<std::int64_t> SmithForm::diagonal() const {
  std::vector<std::int64_t> out;
  const auto k = std::min(D.rows(), D.cols());
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) out.push_back(D(i, i));
  return out;
}

std::size_t SmithForm::rank() const {
  const auto d = diagonal();
  return static_cast<std::size_t>(std::count_if(d.begin(), d.end(), [](std::int64_t x) { return x != 0; }));
}

namespace {

std::int64_t abs_checked(std::int64_t x) { return x < 0 ? checked::neg(x) : x; }

}  // namespace

SmithForm smith_normal_form(const IntegerMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  IntegerMatrix a = m;
  IntegerMatrix u = IntegerMatrix::identity(rows);
  IntegerMatrix v = IntegerMatrix::identity(cols);
  const std::size_t k = std::min(rows, cols);

  for (std::size_t t = 0; t < k; ++t) {
    while (true) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      std::size_t pi = rows, pj = cols;
      std::int64_t best = 0;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (a(i, j) != 0 && (best == 0 || abs_checked(a(i, j)) < best)) {
            best = abs_checked(a(i, j));
            pi = i;
            pj = j;
          }
      if (best == 0) return SmithForm{std::move(u), std::move(a), std::move(v)};

      a.swap_rows(t, pi);
      u.swap_rows(t, pi);
      a.swap_cols(t, pj);
      v.swap_cols(t, pj);

      bool cleared = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        const auto q = a(i, t) / a(t, t);
        a.add_row_multiple(i, t, -q);
        u.add_row_multiple(i, t, -q);
        if (a(i, t) != 0) cleared = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        const auto q = a(t, j) / a(t, t);
        a.add_col_multiple(j, t, -q);
        v.add_col_multiple(j, t, -q);
        if (a(t, j) != 0) cleared = false;
      }
      if (!cleared) continue;

      // Enforce d_t | every entry of the trailing block.
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a(i, j) % a(t, t) != 0) {
            a.add_row_multiple(t, i, 1);
            u.add_row_multiple(t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (a(t, t) < 0) {
      a.negate_row(t);
      u.negate_row(t);
    }
  }
  return SmithForm{std::move(u), std::move(a), std::move(v)};
}

std::size_t rank(const IntegerMatrix& m) { return smith_normal_form(m).rank(); }

std::vector<LatticeVector> integer_kernel(const IntegerMatrix& m) {
  const auto snf = smith_normal_form(m);
  std::vector<LatticeVector> out;
  for (std::size_t j = snf.rank(); j < m.cols(); ++j) out.push_back(snf.V.column(j));
  return out;
}

IntegerMatrix inverse_unimodular(const IntegerMatrix& m) {
  if (!is_unimodular(m)) throw DomainError("matrix is not unimodular: " + m.to_string());
  // U m V = I  =>  m^{-1} = V U
  const auto snf = smith_normal_form(m);
  return snf.V * snf.U;
}

bool extends_to_basis(std::span<const LatticeVector> vectors, std::size_t n) {
  for (std::size_t i = 0; i < vectors.size(); ++i)
    if (vectors[i].dim() != n)
      throw DimensionError("vector " + std::to_string(i) + " has dimension " + std::to_string(vectors[i].dim()) +
                           ", expected " + std::to_string(n));
  if (vectors.size() > n) return false;
  if (vectors.empty()) return true;
  const auto snf = smith_normal_form(IntegerMatrix::from_rows(vectors, n));
  const auto d = snf.diagonal();
  return std::all_of(d.begin(), d.end(), [](std::int64_t x) { return x == 1; });
}

}  // namespace toricsplit
