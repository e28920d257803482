#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace toricsplit {

/// Largest absolute coordinate accepted for user-supplied lattice data.
inline constexpr std::int64_t kMaxInputEntry = 1'000'000;
/// Largest ambient dimension handled by the fan routines.
inline constexpr int kMaxDimension = 8;

/// A point of Z^n.
class LatticeVector {
 public:
  LatticeVector() = default;
  explicit LatticeVector(std::vector<std::int64_t> coords) : coords_(std::move(coords)) {}
  LatticeVector(std::initializer_list<std::int64_t> coords) : coords_(coords) {}

  static LatticeVector zero(std::size_t dim) { return LatticeVector(std::vector<std::int64_t>(dim, 0)); }
  static LatticeVector unit(std::size_t dim, std::size_t i);

  std::size_t dim() const noexcept { return coords_.size(); }
  std::int64_t operator[](std::size_t i) const { return coords_[i]; }
  std::int64_t& operator[](std::size_t i) { return coords_[i]; }
  std::span<const std::int64_t> coords() const noexcept { return coords_; }

  bool is_zero() const noexcept;
  /// gcd of the absolute values of the entries (0 for the zero vector).
  std::int64_t content() const;
  bool is_primitive() const { return content() == 1; }
  /// The vector divided by its content. Throws DimensionError on zero.
  LatticeVector primitive() const;

  LatticeVector operator+(const LatticeVector& o) const;
  LatticeVector operator-() const;

  /// Coordinates padded with `before` leading and `after` trailing zeros.
  LatticeVector padded(std::size_t before, std::size_t after) const;

  std::string to_string() const;

  friend auto operator<=>(const LatticeVector&, const LatticeVector&) = default;
  friend bool operator==(const LatticeVector&, const LatticeVector&) = default;

 private:
  std::vector<std::int64_t> coords_;
};

std::ostream& operator<<(std::ostream& os, const LatticeVector& v);

/// Dense integer matrix, row-major.
class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
  IntegerMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows);

  static IntegerMatrix identity(std::size_t n);
  static IntegerMatrix from_columns(std::span<const LatticeVector> cols, std::size_t dim);
  static IntegerMatrix from_rows(std::span<const LatticeVector> rows, std::size_t dim);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  std::int64_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::int64_t& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  LatticeVector column(std::size_t c) const;
  LatticeVector row(std::size_t r) const;
  IntegerMatrix transpose() const;

  /// Checked matrix product; DimensionError on shape mismatch.
  IntegerMatrix operator*(const IntegerMatrix& o) const;
  LatticeVector operator*(const LatticeVector& v) const;

  // Elementary operations used by the normal-form routines.
  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  void negate_row(std::size_t r);
  void negate_col(std::size_t c);
  /// row[dst] += factor * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, std::int64_t factor);
  /// col[dst] += factor * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, std::int64_t factor);

  bool is_diagonal() const;

  std::string to_string() const;

  friend bool operator==(const IntegerMatrix&, const IntegerMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int64_t> data_;
};

std::ostream& operator<<(std::ostream& os, const IntegerMatrix& m);

/// Exact determinant by fraction-free (Bareiss) elimination.
/// Throws DimensionError for non-square input, OverflowError on overflow.
std::int64_t determinant(const IntegerMatrix& m);

bool is_unimodular(const IntegerMatrix& m);

/// U * m * V == D, with U and V unimodular and D diagonal, d1 | d2 | ... , d_i >= 0.
struct SmithForm {
  IntegerMatrix U;
  IntegerMatrix D;
  IntegerMatrix V;

  /// Diagonal entries of D (min(rows, cols) of them).
  std::vector<std::int64_t> diagonal() const;
  /// Number of nonzero invariant factors.
  std::size_t rank() const;
};

SmithForm smith_normal_form(const IntegerMatrix& m);

std::size_t rank(const IntegerMatrix& m);

/// Z-basis of the integer kernel {x : m x = 0}, one vector per column of the
/// right transform beyond the rank.
std::vector<LatticeVector> integer_kernel(const IntegerMatrix& m);

/// Inverse of a unimodular matrix. Throws DomainError if `m` is not unimodular.
IntegerMatrix inverse_unimodular(const IntegerMatrix& m);

/// True iff the vectors can be completed to a Z-basis of Z^n. More than n
/// vectors is reported as false; a vector of the wrong dimension throws.
bool extends_to_basis(std::span<const LatticeVector> vectors, std::size_t n);

std::int64_t gcd(std::int64_t a, std::int64_t b);

}  // namespace toricsplit
