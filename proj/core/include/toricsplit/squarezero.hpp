#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "toricsplit/factor_kind.hpp"
#include "toricsplit/polynomial.hpp"

namespace toricsplit {

/// Cup-product data in degrees 2 and 4: for every unordered pair (i, j) of
/// degree-2 basis elements, the coordinates of e_i * e_j in the degree-4
/// basis.
class QuadraticProfile {
 public:
  QuadraticProfile(int b2, int b4, std::vector<std::string> labels);

  int b2() const noexcept { return b2_; }
  int b4() const noexcept { return b4_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  /// e_i * e_j (symmetric in i, j).
  const std::vector<std::int64_t>& product(int i, int j) const;
  void set_product(int i, int j, std::vector<std::int64_t> value);

  /// u^2 in the degree-4 basis, with u given by its coordinates.
  std::vector<std::int64_t> square(std::span<const std::int64_t> u) const;
  /// sum_i u_i^2 e_i e_i + sum_{i<j} u_i u_j e_i e_j: u^2 with the cross terms
  /// taken once. Vanishes exactly when u^2 does whenever 2 is a unit.
  std::vector<std::int64_t> polar_square(std::span<const std::int64_t> u) const;

  friend bool operator==(const QuadraticProfile&, const QuadraticProfile&) = default;

 private:
  std::size_t slot(int i, int j) const;
  std::vector<std::int64_t> expand(std::span<const std::int64_t> u, std::int64_t cross) const;

  int b2_;
  int b4_;
  std::vector<std::string> labels_;
  std::vector<std::vector<std::int64_t>> table_;  // packed upper triangle
};

/// Ring presentation of one factor class.
QuadraticProfile profile(const FactorKind& k);

/// Kunneth product: degree 4 is the direct sum of the factors' degree-4
/// parts followed by one tensor block H2(i) (x) H2(j) per pair i < j.
QuadraticProfile product_profile(std::span<const QuadraticProfile> ps);
QuadraticProfile product_profile(const ProductManifold& pm);

struct CountOptions {
  /// Largest number of coefficient vectors enumerated; exceeding it is an error.
  std::uint64_t budget = 20'000'000;
  unsigned threads = 1;
};

/// Number of nonzero u in (Z/m)^b2 with polar_square(u) == 0 in (Z/m)^b4, by
/// exhaustive enumeration. For odd m this is the number of u with u^2 == 0;
/// over Z/2 it is the count of solutions of the defining equations
/// (e.g. c_1 d_1 + ... + c_r d_r = 0 for DIAG(r)), which the literal square
/// would lose to the factor 2 on every cross term. Throws ResourceError if m^b2 exceeds the budget and
/// DomainError for m < 2.
std::uint64_t count_square_zero(const QuadraticProfile& p, std::int64_t modulus, const CountOptions& opts = {});

/// Closed-form count of square-zero classes over Z/2.
std::int64_t closed_count_mod2(const FactorKind& k);

/// One connected component of the real square-zero set.
///
/// `line()` is a copy of R. `spheres(a, b)` is S^a x S^b x R with a <= b;
/// a == 0 stands for S^b x R (the S^0 factor having been split into two
/// separate components upstream).
class ComponentDescriptor {
 public:
  static ComponentDescriptor line() { return ComponentDescriptor(true, 0, 0); }
  static ComponentDescriptor spheres(int a, int b);

  bool is_line() const noexcept { return line_; }
  int a() const noexcept { return a_; }
  int b() const noexcept { return b_; }
  int dimension() const noexcept { return line_ ? 1 : a_ + b_ + 1; }

  /// "LINE" or "(a,b)".
  std::string to_string() const;

  friend auto operator<=>(const ComponentDescriptor&, const ComponentDescriptor&) = default;
  friend bool operator==(const ComponentDescriptor&, const ComponentDescriptor&) = default;

 private:
  ComponentDescriptor(bool line, int a, int b) : line_(line), a_(a), b_(b) {}

  bool line_;
  int a_;
  int b_;
};

/// Multiset of connected components.
class RealCensus {
 public:
  void add(const ComponentDescriptor& c, std::int64_t times = 1);
  std::int64_t count(const ComponentDescriptor& c) const;
  std::int64_t total() const;
  const std::map<ComponentDescriptor, std::int64_t>& components() const noexcept { return counts_; }

  RealCensus& operator+=(const RealCensus& o);
  friend RealCensus operator+(RealCensus a, const RealCensus& b) { return a += b; }

  /// e.g. "{LINE x4, (1,1) x1}"
  std::string to_string() const;

  friend bool operator==(const RealCensus&, const RealCensus&) = default;

 private:
  std::map<ComponentDescriptor, std::int64_t> counts_;
};

/// Components of the real square-zero set of p CP^2 # q CP^2-bar for any
/// p, q >= 0 with p + q >= 1 (orientation need not be normalized).
RealCensus census_of_connected_sum(int p, int q);
RealCensus real_census(const FactorKind& k);
/// Multiset union of the factor censuses.
RealCensus real_census(const ProductManifold& pm);

/// Poincare polynomial in x = a degree-2 variable.
Polynomial poincare(const FactorKind& k);
Polynomial poincare(const ProductManifold& pm);

struct TopInvariants {
  std::int64_t chi;
  std::int64_t sigma;
  bool spin;

  friend bool operator==(const TopInvariants&, const TopInvariants&) = default;
};

/// Invariants of S^4 # p CP^2 # q CP^2-bar # r (CP^1 x CP^1).
TopInvariants top_invariants(int p, int q, int r);
/// Invariants of a four-dimensional factor class; ProjLine throws DomainError.
TopInvariants top_invariants(const FactorKind& k);

/// Normal form of S^4 # p CP^2 # q CP^2-bar # r (CP^1 x CP^1): S^4, DIAG(r),
/// or PQ(p', q') with p' >= q'. Every CP^1 x CP^1 summand next to a CP^2 or
/// CP^2-bar summand is traded for CP^2 # CP^2-bar.
FactorKind normalize(int p, int q, int r);

}  // namespace toricsplit
