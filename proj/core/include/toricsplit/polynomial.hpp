#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace toricsplit {

using BigInt = boost::multiprecision::cpp_int;

/// Dense univariate polynomial with arbitrary-precision integer
/// coefficients. Coefficient i multiplies x^i; trailing zeros are trimmed,
/// so the zero polynomial has no coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<BigInt> coeffs);
  Polynomial(std::initializer_list<std::int64_t> coeffs);

  static Polynomial one() { return Polynomial{1}; }

  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  /// Coefficient of x^i (zero past the degree).
  BigInt coeff(std::size_t i) const;
  const std::vector<BigInt>& coeffs() const noexcept { return coeffs_; }

  BigInt eval(const BigInt& x) const;

  Polynomial operator*(const Polynomial& o) const;
  Polynomial& operator*=(const Polynomial& o);
  Polynomial pow(unsigned e) const;

  /// Quotient q with q * divisor == *this, if one exists over Z.
  std::optional<Polynomial> divide_exact(const Polynomial& divisor) const;

  /// e.g. "1 + 3x + x^2"
  std::string to_string() const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void trim();
  std::vector<BigInt> coeffs_;
};

}  // namespace toricsplit
