#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>

#include "toricsplit/factor_kind.hpp"
#include "toricsplit/polynomial.hpp"
#include "toricsplit/squarezero.hpp"

namespace toricsplit {

/// Census class on which square-zero classes are counted over Z/2: the
/// one-dimensional components (LINE) or the S^s x S^s x R components.
struct ClassKey {
  bool line = true;
  int s = 0;

  static ClassKey line_class() { return {true, 0}; }
  static ClassKey sphere_class(int s) { return {false, s}; }

  /// "LINE" or "(s,s)".
  std::string to_string() const;

  friend auto operator<=>(const ClassKey&, const ClassKey&) = default;
  friend bool operator==(const ClassKey&, const ClassKey&) = default;
};

/// Everything recovery is allowed to look at.
struct InvariantBundle {
  RealCensus census;
  /// Square-zero counts over Z/2 restricted to the span of each census class.
  std::map<ClassKey, std::int64_t> class_mod2_counts;
  Polynomial poincare_poly;
  int complex_dim = 0;

  std::int64_t mod2_count(const ClassKey& k) const;

  friend bool operator==(const InvariantBundle&, const InvariantBundle&) = default;
};

/// Canonical single-document JSON with sorted keys.
std::string bundle_to_json(const InvariantBundle& b, int indent = -1);
InvariantBundle bundle_from_json(std::string_view text);

/// Factor multiplicities over the recovery alphabet: CP^1, PQ(p,q),
/// DIAG(r) with r >= 2, and S^4. Zero entries are never stored.
struct MultiplicityVector {
  std::int64_t m = 0;
  std::map<std::pair<int, int>, std::int64_t> m_pq;
  std::map<int, std::int64_t> n_r;
  std::int64_t n = 0;

  std::string to_string() const;

  friend bool operator==(const MultiplicityVector&, const MultiplicityVector&) = default;
};

ProductManifold realize(const MultiplicityVector& v);
/// Throws AlphabetError if `pm` contains DIAG(1).
MultiplicityVector multiplicities(const ProductManifold& pm);

/// Throws AlphabetError if `pm` contains DIAG(1).
InvariantBundle bundle(const ProductManifold& pm);

/// Solves the factor multiplicities back out of a bundle. Throws
/// InconsistentBundleError if the bundle did not come from a product over
/// the alphabet.
MultiplicityVector recover(const InvariantBundle& b);

/// Repeatedly divides by 1 + p x + x^2 (p descending) and then by 1 + x^2.
/// Returns {n, {p -> m_p}}; throws InconsistentBundleError if the leftover
/// quotient is not 1.
std::pair<std::int64_t, std::map<int, std::int64_t>> disentangle_poincare(const Polynomial& poly);

/// Multiset equality; both sides must be over the alphabet.
bool same_decomposition(const ProductManifold& a, const ProductManifold& b);

/// same_decomposition(a, b), after checking on this instance that
/// bundle(a x c) == bundle(b x c) exactly when bundle(a) == bundle(b), and
/// that bundle equality agrees with multiset equality. A violation throws
/// std::logic_error.
bool cancellation_check(const ProductManifold& a, const ProductManifold& b, const ProductManifold& c);

}  // namespace toricsplit
