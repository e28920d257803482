#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "toricsplit/lattice.hpp"

namespace toricsplit {

/// Index set into a parent fan's ray list, kept sorted and duplicate free.
class Cone {
 public:
  Cone() = default;
  Cone(std::initializer_list<std::size_t> rays) : Cone(std::vector<std::size_t>(rays)) {}
  explicit Cone(std::vector<std::size_t> rays);

  const std::vector<std::size_t>& rays() const noexcept { return rays_; }
  std::size_t size() const noexcept { return rays_.size(); }
  bool contains(std::size_t ray) const;
  /// True iff every ray of this cone is a ray of `other`.
  bool is_face_of(const Cone& other) const;

  friend auto operator<=>(const Cone&, const Cone&) = default;
  friend bool operator==(const Cone&, const Cone&) = default;

 private:
  std::vector<std::size_t> rays_;
};

/// A fan given by its rays and maximal cones.
///
/// Construction normalizes: rays are made primitive and duplicates merged,
/// cone lists are sorted lexicographically. It throws StructuralError for
/// zero rays, out-of-range indices, rays that lie in no maximal cone, and
/// maximal cones nested in one another; DimensionError for a dimension
/// outside [1, kMaxDimension] or coordinates beyond kMaxInputEntry.
class Fan {
 public:
  Fan(int dim, std::vector<LatticeVector> rays, std::vector<Cone> maximal_cones);

  int dim() const noexcept { return dim_; }
  const std::vector<LatticeVector>& rays() const noexcept { return rays_; }
  const std::vector<Cone>& maximal_cones() const noexcept { return cones_; }

  /// Rays of a cone, in index order.
  std::vector<LatticeVector> cone_rays(const Cone& c) const;
  std::optional<std::size_t> find_ray(const LatticeVector& v) const;

  /// Equality of the underlying geometric data: same ray set and, through
  /// ray coordinates, the same set of maximal cones. Indexing may differ.
  bool same_as(const Fan& other) const;

  friend bool operator==(const Fan&, const Fan&) = default;

 private:
  int dim_;
  std::vector<LatticeVector> rays_;
  std::vector<Cone> cones_;
};

struct ValidationReport {
  bool strongly_convex = false;
  bool simplicial = false;
  bool smooth = false;
  bool pairwise_faces = false;
  bool complete = false;

  bool all() const noexcept { return strongly_convex && simplicial && smooth && pairwise_faces && complete; }
  std::string to_string() const;
};

ValidationReport validate(const Fan& f);

/// Throws PreconditionError naming `what` unless validate(f).all().
void require_smooth_complete(const Fan& f, const char* what);

/// Product fan: rays of `a` padded on the right, then rays of `b` padded on
/// the left; maximal cones are all unions of one cone from each side.
Fan product(const Fan& a, const Fan& b);

/// Image of the fan under a unimodular change of coordinates.
Fan transform(const Fan& f, const IntegerMatrix& u);

/// Rays (1,0),(0,1),(-1,a),(0,-1) with the four cones of adjacent rays.
Fan hirzebruch(std::int64_t a);
/// Rays e_1..e_n and -(e_1+...+e_n); every n-subset is a maximal cone.
Fan projective_fan(int n);
/// Star subdivision of a maximal cone at the sum of its generators.
Fan blowup_at_cone(const Fan& f, const Cone& c);

}  // namespace toricsplit
