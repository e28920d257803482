#pragma once

// Independent oracles. Each one works from the defining equations or by
// exhaustive search and shares no code path with the routine it checks.

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "toricsplit/factor_kind.hpp"
#include "toricsplit/fan.hpp"
#include "toricsplit/polynomial.hpp"
#include "toricsplit/squarezero.hpp"

namespace toricsplit::testing {

/// #{nonzero (a, b) in (Z/m)^(p+q) : a_1^2 + ... + a_p^2 == b_1^2 + ... + b_q^2}.
std::uint64_t equation_count_pq(int p, int q, std::int64_t m);
/// #{nonzero (c, d) in (Z/m)^(2r) : c_1 d_1 + ... + c_r d_r == 0}.
std::uint64_t equation_count_diag(int r, std::int64_t m);
/// Square-zero count of a single factor from its defining equation.
std::uint64_t equation_count(const FactorKind& k, std::int64_t m);

/// Components of {a in R^(p+q) \ 0 : a_1^2 + ... + a_p^2 = a_(p+1)^2 + ... + a_(p+q)^2}
/// read off as S^(p-1) x S^(q-1) x R, with each S^0 factor split into two
/// points.
RealCensus quadric_census(int p, int q);

/// Finest partition of the reference-cone basis directions that splits the
/// fan as a product, found by trying every set partition (finest first).
/// Returns the factor fans in block order.
std::vector<Fan> partition_oracle(const Fan& f);

/// Every (n, {p -> m_p}) with (1+x^2)^n prod (1+px+x^2)^{m_p} == poly,
/// found by enumeration.
std::vector<std::pair<std::int64_t, std::map<int, std::int64_t>>> brute_force_disentangle(const Polynomial& poly);

/// Multisets of fans equal up to isomorphism (greedy matching; isomorphism
/// is an equivalence relation so greedy is exact).
bool same_fans_up_to_isomorphism(const std::vector<Fan>& a, const std::vector<Fan>& b);

}  // namespace toricsplit::testing
