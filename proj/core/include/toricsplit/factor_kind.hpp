#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace toricsplit {

/// Diffeomorphism class of one factor: CP^1, p CP^2 # q CP^2-bar (p >= q >= 0,
/// p + q >= 1), r (CP^1 x CP^1) (r >= 1), or S^4.
class FactorKind {
 public:
  enum class Tag { ProjLine, PQ, Diag, FourSphere };

  static FactorKind proj_line() { return FactorKind(Tag::ProjLine, 0, 0, 0); }
  /// Throws DomainError unless p >= q >= 0 and p + q >= 1.
  static FactorKind pq(int p, int q);
  /// Throws DomainError unless r >= 1.
  static FactorKind diag(int r);
  static FactorKind four_sphere() { return FactorKind(Tag::FourSphere, 0, 0, 0); }

  Tag tag() const noexcept { return tag_; }
  int p() const noexcept { return p_; }
  int q() const noexcept { return q_; }
  int r() const noexcept { return r_; }

  int complex_dim() const noexcept { return tag_ == Tag::ProjLine ? 1 : 2; }
  int b2() const noexcept;

  /// "CP1", "PQ(2,1)", "DIAG(3)" or "S4".
  std::string to_string() const;

  friend auto operator<=>(const FactorKind&, const FactorKind&) = default;
  friend bool operator==(const FactorKind&, const FactorKind&) = default;

 private:
  FactorKind(Tag t, int p, int q, int r) : tag_(t), p_(p), q_(q), r_(r) {}

  Tag tag_;
  int p_;
  int q_;
  int r_;
};

/// Multiset of factors, stored sorted. The empty product is the point.
class ProductManifold {
 public:
  ProductManifold() = default;
  explicit ProductManifold(std::vector<FactorKind> factors);

  const std::vector<FactorKind>& factors() const noexcept { return factors_; }
  bool empty() const noexcept { return factors_.empty(); }
  int complex_dim() const noexcept;
  int b2() const noexcept;
  std::size_t count(const FactorKind& k) const;

  ProductManifold operator*(const ProductManifold& o) const;

  /// Canonical descriptor, e.g. "CP1^2 * PQ(1,1)"; "1" for the point.
  std::string to_string() const;

  friend bool operator==(const ProductManifold&, const ProductManifold&) = default;

 private:
  std::vector<FactorKind> factors_;
};

/// Parses a product descriptor: terms separated by '*', each one of CP1,
/// PQ(p,q), DIAG(r), S4 with an optional "^k". Keywords are case
/// insensitive, whitespace is ignored, and "1" or an empty string denotes
/// the point. Throws ParseError carrying the byte position of the offending
/// token.
ProductManifold parse_product(std::string_view text);

}  // namespace toricsplit
