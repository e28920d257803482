#include "toricsplit/fan.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "toricsplit/checked.hpp"
#include "toricsplit/error.hpp"

namespace toricsplit {

// ---------------------------------------------------------------------------
// Cone

Cone::Cone(std::vector<std::size_t> rays) : rays_(std::move(rays)) {
  std::sort(rays_.begin(), rays_.end());
  rays_.erase(std::unique(rays_.begin(), rays_.end()), rays_.end());
}

bool Cone::contains(std::size_t ray) const { return std::binary_search(rays_.begin(), rays_.end(), ray); }

bool Cone::is_face_of(const Cone& other) const {
  return std::includes(other.rays_.begin(), other.rays_.end(), rays_.begin(), rays_.end());
}

// ---------------------------------------------------------------------------
// Fan

Fan::Fan(int dim, std::vector<LatticeVector> rays, std::vector<Cone> maximal_cones) : dim_(dim) {
  if (dim < 1 || dim > kMaxDimension)
    throw DimensionError("fan dimension " + std::to_string(dim) + " outside [1, " + std::to_string(kMaxDimension) +
                         "]");
  const auto n = static_cast<std::size_t>(dim);

  std::map<LatticeVector, std::size_t> seen;
  std::vector<std::size_t> remap(rays.size());
  for (std::size_t i = 0; i < rays.size(); ++i) {
    const auto& v = rays[i];
    if (v.dim() != n)
      throw DimensionError("ray " + std::to_string(i) + " has dimension " + std::to_string(v.dim()) + ", expected " +
                           std::to_string(n));
    for (auto c : v.coords())
      if (c > kMaxInputEntry || c < -kMaxInputEntry)
        throw DomainError("ray " + std::to_string(i) + " has a coordinate beyond " + std::to_string(kMaxInputEntry));
    if (v.is_zero()) throw StructuralError("ray " + std::to_string(i) + " is zero");
    auto p = v.primitive();
    auto [it, inserted] = seen.emplace(p, rays_.size());
    if (inserted) rays_.push_back(std::move(p));
    remap[i] = it->second;
  }

  if (maximal_cones.empty()) throw StructuralError("fan has no maximal cones");
  for (std::size_t ci = 0; ci < maximal_cones.size(); ++ci) {
    std::vector<std::size_t> idx;
    for (auto r : maximal_cones[ci].rays()) {
      if (r >= rays.size())
        throw StructuralError("maximal cone " + std::to_string(ci) + " references ray " + std::to_string(r) +
                              " but the fan has " + std::to_string(rays.size()) + " rays");
      idx.push_back(remap[r]);
    }
    if (idx.empty()) throw StructuralError("maximal cone " + std::to_string(ci) + " is empty");
    cones_.emplace_back(std::move(idx));
  }
  std::sort(cones_.begin(), cones_.end());
  cones_.erase(std::unique(cones_.begin(), cones_.end()), cones_.end());

  for (std::size_t i = 0; i < cones_.size(); ++i)
    for (std::size_t j = 0; j < cones_.size(); ++j)
      if (i != j && cones_[i].is_face_of(cones_[j]))
        throw StructuralError("maximal cone " + std::to_string(i) + " is contained in maximal cone " +
                              std::to_string(j));

  std::vector<bool> used(rays_.size(), false);
  for (const auto& c : cones_)
    for (auto r : c.rays()) used[r] = true;
  for (std::size_t i = 0; i < used.size(); ++i)
    if (!used[i]) throw StructuralError("ray " + rays_[i].to_string() + " lies in no maximal cone");
}

std::vector<LatticeVector> Fan::cone_rays(const Cone& c) const {
  std::vector<LatticeVector> out;
  out.reserve(c.size());
  for (auto r : c.rays()) out.push_back(rays_.at(r));
  return out;
}

std::optional<std::size_t> Fan::find_ray(const LatticeVector& v) const {
  auto it = std::find(rays_.begin(), rays_.end(), v);
  if (it == rays_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - rays_.begin());
}

namespace {

using ConeShape = std::vector<LatticeVector>;

std::set<ConeShape> cone_shapes(const Fan& f) {
  std::set<ConeShape> out;
  for (const auto& c : f.maximal_cones()) {
    auto rays = f.cone_rays(c);
    std::sort(rays.begin(), rays.end());
    out.insert(std::move(rays));
  }
  return out;
}

}  // namespace

bool Fan::same_as(const Fan& other) const {
  if (dim_ != other.dim_) return false;
  std::set<LatticeVector> a(rays_.begin(), rays_.end());
  std::set<LatticeVector> b(other.rays_.begin(), other.rays_.end());
  return a == b && cone_shapes(*this) == cone_shapes(other);
}

// ---------------------------------------------------------------------------
// Validation

std::string ValidationReport::to_string() const {
  std::ostringstream os;
  os << std::boolalpha << "strongly_convex=" << strongly_convex << " simplicial=" << simplicial
     << " smooth=" << smooth << " pairwise_faces=" << pairwise_faces << " complete=" << complete;
  return os.str();
}

namespace {

// Is {x >= 0 : w x = 0, x_1 + ... + x_k = 1} nonempty? Phase-one simplex
// over the rationals; Bland's rule rules out cycling.
bool nonnegative_kernel_point(const IntegerMatrix& w) {
  using Q = boost::multiprecision::cpp_rational;
  const std::size_t m = w.rows() + 1, k = w.cols(), width = k + m + 1;
  std::vector<std::vector<Q>> t(m, std::vector<Q>(width, 0));
  std::vector<std::size_t> basis(m);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < k; ++c) t[r][c] = r + 1 < m ? Q(w(r, c)) : Q(1);
    t[r][k + r] = 1;
    t[r][width - 1] = r + 1 < m ? 0 : 1;
    basis[r] = k + r;
  }
  while (true) {
    // reduced cost of column c is -(sum of the rows whose basic variable is artificial)
    std::size_t enter = width;
    for (std::size_t c = 0; c + 1 < width && enter == width; ++c) {
      if (std::find(basis.begin(), basis.end(), c) != basis.end()) continue;
      Q cost = c >= k ? 1 : 0;
      for (std::size_t r = 0; r < m; ++r)
        if (basis[r] >= k) cost -= t[r][c];
      if (cost < 0) enter = c;
    }
    if (enter == width) break;
    std::size_t leave = m;
    Q best;
    for (std::size_t r = 0; r < m; ++r) {
      if (t[r][enter] <= 0) continue;
      const Q ratio = t[r][width - 1] / t[r][enter];
      if (leave == m || ratio < best || (ratio == best && basis[r] < basis[leave])) {
        leave = r;
        best = ratio;
      }
    }
    if (leave == m) break;  // unbounded direction; cannot happen for phase one
    const Q piv = t[leave][enter];
    for (auto& x : t[leave]) x /= piv;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == leave || t[r][enter] == 0) continue;
      const Q f = t[r][enter];
      for (std::size_t c = 0; c < width; ++c) t[r][c] -= f * t[leave][c];
    }
    basis[leave] = enter;
  }
  for (std::size_t r = 0; r < m; ++r)
    if (basis[r] >= k && t[r][width - 1] != 0) return false;
  return true;
}

// Does some x != 0 with m x = 0 have x_j >= 0 for every j < signed_cols and
// x_j > 0 for at least one of them? Columns from signed_cols on are free and
// are quotiented out first.
bool has_semipositive_kernel_vector(const IntegerMatrix& m, std::size_t signed_cols) {
  if (signed_cols == 0) return false;
  IntegerMatrix w(m.rows(), signed_cols);
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < signed_cols; ++c) w(r, c) = m(r, c);

  if (signed_cols < m.cols()) {
    IntegerMatrix free_part(m.rows(), m.cols() - signed_cols);
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = signed_cols; c < m.cols(); ++c) free_part(r, c - signed_cols) = m(r, c);
    const auto snf = smith_normal_form(free_part);
    const auto r0 = snf.rank();
    // Rows r0.. of U annihilate exactly the span of the free columns.
    IntegerMatrix proj(m.rows() - r0, m.rows());
    for (std::size_t r = r0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.rows(); ++c) proj(r - r0, c) = snf.U(r, c);
    if (proj.rows() == 0) return true;
    w = proj * w;
  }
  return nonnegative_kernel_point(w);
}

// Adjugate of a square matrix: adj(B) * B = det(B) * I.
IntegerMatrix adjugate(const IntegerMatrix& b) {
  const std::size_t n = b.rows();
  IntegerMatrix adj(n, n);
  if (n == 1) {
    adj(0, 0) = 1;
    return adj;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      IntegerMatrix minor(n - 1, n - 1);
      for (std::size_t r = 0, mr = 0; r < n; ++r) {
        if (r == i) continue;
        for (std::size_t c = 0, mc = 0; c < n; ++c) {
          if (c == j) continue;
          minor(mr, mc++) = b(r, c);
        }
        ++mr;
      }
      const auto cof = determinant(minor);
      adj(j, i) = ((i + j) % 2 == 0) ? cof : checked::neg(cof);
    }
  return adj;
}

struct FullCone {
  IntegerMatrix dual;  // sign(det) * adj(B): row s pairs positively with ray s only
  bool usable = false;
};

std::int64_t dot(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
  std::int64_t acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc = checked::add(acc, checked::mul(a[i], b[i]));
  return acc;
}

// Tries the functional summing the dual rows of `s` over rays missing from
// `t`. It is positive on those rays, zero on the shared ones; if it is
// negative on every ray of `t` not in `s`, it separates the two cones.
bool separates(const Fan& f, const Cone& s, const FullCone& sd, const Cone& t) {
  if (!sd.usable) return false;
  const auto n = static_cast<std::size_t>(f.dim());
  std::vector<std::int64_t> h(n, 0);
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (t.contains(s.rays()[k])) continue;
    for (std::size_t c = 0; c < n; ++c) h[c] = checked::add(h[c], sd.dual(k, c));
  }
  for (auto r : t.rays()) {
    if (s.contains(r)) continue;
    if (dot(h, f.rays()[r].coords()) >= 0) return false;
  }
  return true;
}

bool meets_in_common_face(const Fan& f, const Cone& s, const FullCone& sd, const Cone& t, const FullCone& td) {
  if (separates(f, s, sd, t) || separates(f, t, td, s)) return true;

  std::vector<LatticeVector> cols;
  std::vector<LatticeVector> common;
  for (auto r : s.rays())
    if (!t.contains(r)) cols.push_back(f.rays()[r]);
    else common.push_back(f.rays()[r]);
  for (auto r : t.rays())
    if (!s.contains(r)) cols.push_back(-f.rays()[r]);
  const auto signed_cols = cols.size();
  cols.insert(cols.end(), common.begin(), common.end());
  const auto m = IntegerMatrix::from_columns(cols, static_cast<std::size_t>(f.dim()));
  return !has_semipositive_kernel_vector(m, signed_cols);
}

}  // namespace

ValidationReport validate(const Fan& f) {
  ValidationReport rep;
  const auto n = static_cast<std::size_t>(f.dim());
  const auto& cones = f.maximal_cones();

  std::vector<IntegerMatrix> mats;
  mats.reserve(cones.size());
  rep.simplicial = true;
  rep.strongly_convex = true;
  for (const auto& c : cones) {
    mats.push_back(IntegerMatrix::from_columns(f.cone_rays(c), n));
    const bool independent = rank(mats.back()) == c.size();
    if (!independent) {
      rep.simplicial = false;
      if (has_semipositive_kernel_vector(mats.back(), c.size())) rep.strongly_convex = false;
    }
  }

  rep.smooth = std::all_of(cones.begin(), cones.end(), [&](const Cone& c) {
    const auto rays = f.cone_rays(c);
    return c.size() == n && extends_to_basis(rays, n);
  });

  // Non-simplicial fans are outside the supported class; the exact face
  // test below relies on unique cone coordinates.
  if (rep.simplicial) {
    std::vector<FullCone> full(cones.size());
    for (std::size_t i = 0; i < cones.size(); ++i) {
      if (cones[i].size() != n) continue;
      const auto det = determinant(mats[i]);
      full[i].dual = adjugate(mats[i]);
      if (det < 0)
        for (std::size_t r = 0; r < n; ++r) full[i].dual.negate_row(r);
      full[i].usable = true;
    }
    rep.pairwise_faces = true;
    for (std::size_t i = 0; i < cones.size() && rep.pairwise_faces; ++i)
      for (std::size_t j = i + 1; j < cones.size(); ++j)
        if (!meets_in_common_face(f, cones[i], full[i], cones[j], full[j])) {
          rep.pairwise_faces = false;
          break;
        }
  }

  // Complete: every facet of a full-dimensional maximal cone lies in exactly
  // two maximal cones, and facet adjacency connects all maximal cones.
  bool complete = std::all_of(cones.begin(), cones.end(), [&](const Cone& c) { return c.size() == n; });
  if (complete) {
    std::map<std::vector<std::size_t>, std::vector<std::size_t>> facets;
    for (std::size_t ci = 0; ci < cones.size(); ++ci)
      for (std::size_t drop = 0; drop < n; ++drop) {
        std::vector<std::size_t> facet;
        for (std::size_t k = 0; k < n; ++k)
          if (k != drop) facet.push_back(cones[ci].rays()[k]);
        facets[facet].push_back(ci);
      }
    std::vector<std::size_t> parent(cones.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& [facet, owners] : facets) {
      if (owners.size() != 2) {
        complete = false;
        break;
      }
      parent[find(owners[0])] = find(owners[1]);
    }
    if (complete)
      for (std::size_t ci = 1; ci < cones.size(); ++ci)
        if (find(ci) != find(0)) {
          complete = false;
          break;
        }
  }
  rep.complete = complete;
  return rep;
}

void require_smooth_complete(const Fan& f, const char* what) {
  const auto rep = validate(f);
  if (!rep.all()) throw PreconditionError(std::string(what) + ": fan is not a valid smooth complete fan (" + rep.to_string() + ")");
}

// ---------------------------------------------------------------------------
// Constructions

Fan product(const Fan& a, const Fan& b) {
  require_smooth_complete(a, "product (left factor)");
  require_smooth_complete(b, "product (right factor)");
  const auto na = static_cast<std::size_t>(a.dim());
  const auto nb = static_cast<std::size_t>(b.dim());
  if (na + nb > static_cast<std::size_t>(kMaxDimension))
    throw DimensionError("product dimension " + std::to_string(na + nb) + " exceeds " +
                         std::to_string(kMaxDimension));

  std::vector<LatticeVector> rays;
  for (const auto& v : a.rays()) rays.push_back(v.padded(0, nb));
  for (const auto& v : b.rays()) rays.push_back(v.padded(na, 0));
  const auto offset = a.rays().size();

  std::vector<Cone> cones;
  for (const auto& ca : a.maximal_cones())
    for (const auto& cb : b.maximal_cones()) {
      std::vector<std::size_t> idx(ca.rays());
      for (auto r : cb.rays()) idx.push_back(r + offset);
      cones.emplace_back(std::move(idx));
    }
  return Fan(static_cast<int>(na + nb), std::move(rays), std::move(cones));
}

Fan transform(const Fan& f, const IntegerMatrix& u) {
  if (u.rows() != static_cast<std::size_t>(f.dim()) || !is_unimodular(u))
    throw DomainError("transform requires a unimodular " + std::to_string(f.dim()) + "x" + std::to_string(f.dim()) +
                      " matrix");
  std::vector<LatticeVector> rays;
  rays.reserve(f.rays().size());
  for (const auto& v : f.rays()) rays.push_back(u * v);
  return Fan(f.dim(), std::move(rays), f.maximal_cones());
}

Fan hirzebruch(std::int64_t a) {
  return Fan(2, {{1, 0}, {0, 1}, {-1, a}, {0, -1}}, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
}

Fan projective_fan(int n) {
  if (n < 1 || n >= kMaxDimension + 1)
    throw DimensionError("projective space dimension " + std::to_string(n) + " outside [1, " +
                         std::to_string(kMaxDimension) + "]");
  const auto dim = static_cast<std::size_t>(n);
  std::vector<LatticeVector> rays;
  for (std::size_t i = 0; i < dim; ++i) rays.push_back(LatticeVector::unit(dim, i));
  rays.emplace_back(std::vector<std::int64_t>(dim, -1));
  std::vector<Cone> cones;
  for (std::size_t skip = 0; skip <= dim; ++skip) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i <= dim; ++i)
      if (i != skip) idx.push_back(i);
    cones.emplace_back(std::move(idx));
  }
  return Fan(n, std::move(rays), std::move(cones));
}

Fan blowup_at_cone(const Fan& f, const Cone& c) {
  const auto& cones = f.maximal_cones();
  if (std::find(cones.begin(), cones.end(), c) == cones.end())
    throw PreconditionError("blow-up requires a maximal cone of the fan");
  auto rays = f.rays();
  LatticeVector center = LatticeVector::zero(static_cast<std::size_t>(f.dim()));
  for (auto r : c.rays()) center = center + rays[r];
  const auto center_index = rays.size();
  rays.push_back(center);

  std::vector<Cone> out;
  for (const auto& other : cones)
    if (other != c) out.push_back(other);
  for (auto drop : c.rays()) {
    std::vector<std::size_t> idx;
    for (auto r : c.rays())
      if (r != drop) idx.push_back(r);
    idx.push_back(center_index);
    out.emplace_back(std::move(idx));
  }
  return Fan(f.dim(), std::move(rays), std::move(out));
}

}  // namespace toricsplit
