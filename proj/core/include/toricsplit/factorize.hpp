#pragma once

#include <optional>
#include <vector>

#include "toricsplit/fan.hpp"
#include "toricsplit/lattice.hpp"

namespace toricsplit {

struct FactorBlock {
  /// Lattice vectors (in the input coordinates) spanning this factor.
  std::vector<LatticeVector> sub_basis;
  /// The factor fan, written in `sub_basis` coordinates.
  Fan factor;
};

struct FactorizationResult {
  std::vector<FactorBlock> blocks;
  /// Columns are the concatenated sub-bases; maps product coordinates to
  /// input coordinates.
  IntegerMatrix change_of_basis;
};

/// Splits a smooth complete fan into indecomposable factors.
///
/// The rays of the lexicographically least maximal cone form a Z-basis; all
/// rays are rewritten in it and two basis directions are linked whenever a
/// ray uses both. Connected components give a candidate partition, which is
/// checked block by block (every maximal cone must be a product of per-block
/// cones and each block must itself be a smooth complete fan). A failing
/// pair of blocks is merged and the check repeated; the single-block
/// partition always passes.
///
/// Throws PreconditionError unless the input validates.
FactorizationResult factorize(const Fan& f);

/// Product of the factors pushed through change_of_basis.
Fan reassemble(const FactorizationResult& r);

/// Unimodular U with U * rays(a) == rays(b) as sets and cones mapped onto
/// cones, or nullopt. The first certificate in a fixed search order is
/// returned. Dimension mismatch gives nullopt; invalid fans throw
/// PreconditionError.
std::optional<IntegerMatrix> isomorphic(const Fan& a, const Fan& b);

/// True iff `u` maps `a` onto `b` ray-for-ray and cone-for-cone.
bool is_isomorphism(const IntegerMatrix& u, const Fan& a, const Fan& b);

}  // namespace toricsplit
