#include "toricsplit/factorize.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <utility>

#include "toricsplit/error.hpp"

namespace toricsplit {

namespace {

using Block = std::vector<std::size_t>;
using Partition = std::vector<Block>;

struct Frame {
  std::size_t n = 0;
  IntegerMatrix basis;                // columns: rays of the reference cone
  std::vector<LatticeVector> coords;  // every ray in basis coordinates
};

Frame make_frame(const Fan& f) {
  Frame fr;
  fr.n = static_cast<std::size_t>(f.dim());
  fr.basis = IntegerMatrix::from_columns(f.cone_rays(f.maximal_cones().front()), fr.n);
  const auto inv = inverse_unimodular(fr.basis);
  fr.coords.reserve(f.rays().size());
  for (const auto& v : f.rays()) fr.coords.push_back(inv * v);
  return fr;
}

void sort_partition(Partition& p) {
  for (auto& b : p) std::sort(b.begin(), b.end());
  std::sort(p.begin(), p.end(), [](const Block& x, const Block& y) { return x.front() < y.front(); });
}

Partition merge(Partition p, std::size_t a, std::size_t b) {
  if (a > b) std::swap(a, b);
  p[a].insert(p[a].end(), p[b].begin(), p[b].end());
  p.erase(p.begin() + static_cast<std::ptrdiff_t>(b));
  sort_partition(p);
  return p;
}

struct Verdict {
  bool ok = false;
  std::pair<std::size_t, std::size_t> offending{0, 1};
  std::vector<Fan> factors;
};

Verdict fail(std::size_t a, std::size_t b) {
  Verdict v;
  v.offending = {a, b};
  return v;
}

Verdict verify(const Fan& f, const Frame& fr, const Partition& p) {
  const std::size_t k = p.size();
  if (k == 1) {
    Verdict v;
    v.ok = true;
    v.factors.push_back(Fan(f.dim(), fr.coords, f.maximal_cones()));
    return v;
  }

  std::vector<std::size_t> block_of(fr.n);
  for (std::size_t b = 0; b < k; ++b)
    for (auto d : p[b]) block_of[d] = b;

  // Each ray must live in a single block.
  std::vector<std::size_t> ray_block(fr.coords.size());
  for (std::size_t i = 0; i < fr.coords.size(); ++i) {
    std::set<std::size_t> touched;
    for (std::size_t d = 0; d < fr.n; ++d)
      if (fr.coords[i][d] != 0) touched.insert(block_of[d]);
    if (touched.size() > 1) return fail(*touched.begin(), *std::next(touched.begin()));
    ray_block[i] = *touched.begin();
  }

  // Local ray lists per block.
  std::vector<std::vector<LatticeVector>> local_rays(k);
  std::vector<std::size_t> local_index(fr.coords.size());
  for (std::size_t i = 0; i < fr.coords.size(); ++i) {
    const auto b = ray_block[i];
    std::vector<std::int64_t> c;
    for (auto d : p[b]) c.push_back(fr.coords[i][d]);
    local_index[i] = local_rays[b].size();
    local_rays[b].emplace_back(std::move(c));
  }

  // Split every maximal cone into its per-block parts.
  std::vector<std::vector<Block>> parts;
  parts.reserve(f.maximal_cones().size());
  std::vector<std::set<Block>> block_cones(k);
  for (const auto& cone : f.maximal_cones()) {
    std::vector<Block> split(k);
    for (auto r : cone.rays()) split[ray_block[r]].push_back(local_index[r]);
    for (std::size_t b = 0; b < k; ++b) {
      std::sort(split[b].begin(), split[b].end());
      block_cones[b].insert(split[b]);
    }
    parts.push_back(std::move(split));
  }

  // The map cone -> (parts) is injective, so the cones form the full product
  // exactly when the counts agree. Test pairs first to locate the culprit.
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a + 1; b < k; ++b) {
      std::set<std::pair<Block, Block>> seen;
      for (const auto& s : parts) seen.emplace(s[a], s[b]);
      if (seen.size() != block_cones[a].size() * block_cones[b].size()) return fail(a, b);
    }
  std::size_t expected = 1;
  for (const auto& bc : block_cones) expected *= bc.size();
  if (expected != f.maximal_cones().size()) return fail(0, 1);

  Verdict v;
  for (std::size_t b = 0; b < k; ++b) {
    const std::size_t neighbour = b + 1 < k ? b + 1 : b - 1;
    std::vector<Cone> cones;
    for (const auto& c : block_cones[b]) {
      if (c.empty()) return fail(b, neighbour);
      cones.emplace_back(c);
    }
    try {
      Fan factor(static_cast<int>(p[b].size()), local_rays[b], std::move(cones));
      if (!validate(factor).all()) return fail(b, neighbour);
      v.factors.push_back(std::move(factor));
    } catch (const StructuralError&) {
      return fail(b, neighbour);
    }
  }
  v.ok = true;
  return v;
}

}  // namespace

FactorizationResult factorize(const Fan& f) {
  require_smooth_complete(f, "factorize");
  const auto fr = make_frame(f);

  // Link basis directions that share a ray.
  std::vector<std::size_t> parent(fr.n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& c : fr.coords) {
    std::optional<std::size_t> first;
    for (std::size_t d = 0; d < fr.n; ++d) {
      if (c[d] == 0) continue;
      if (!first) first = d;
      else parent[find(d)] = find(*first);
    }
  }
  std::map<std::size_t, Block> groups;
  for (std::size_t d = 0; d < fr.n; ++d) groups[find(d)].push_back(d);
  Partition p;
  for (auto& [root, dirs] : groups) p.push_back(std::move(dirs));
  sort_partition(p);

  Verdict v = verify(f, fr, p);
  while (!v.ok) {
    p = merge(std::move(p), v.offending.first, v.offending.second);
    v = verify(f, fr, p);
  }

  FactorizationResult result;
  std::vector<LatticeVector> columns;
  for (std::size_t b = 0; b < p.size(); ++b) {
    std::vector<LatticeVector> sub;
    for (auto d : p[b]) sub.push_back(fr.basis.column(d));
    columns.insert(columns.end(), sub.begin(), sub.end());
    result.blocks.push_back(FactorBlock{std::move(sub), std::move(v.factors[b])});
  }
  result.change_of_basis = IntegerMatrix::from_columns(columns, fr.n);

  if (!reassemble(result).same_as(f)) throw std::logic_error("factorize: reassembled fan differs from input");
  return result;
}

Fan reassemble(const FactorizationResult& r) {
  if (r.blocks.empty()) throw DomainError("reassemble: no blocks");
  Fan acc = r.blocks.front().factor;
  for (std::size_t b = 1; b < r.blocks.size(); ++b) acc = product(acc, r.blocks[b].factor);
  return transform(acc, r.change_of_basis);
}

bool is_isomorphism(const IntegerMatrix& u, const Fan& a, const Fan& b) {
  const auto n = static_cast<std::size_t>(a.dim());
  if (a.dim() != b.dim() || u.rows() != n || u.cols() != n || !is_unimodular(u)) return false;
  if (a.rays().size() != b.rays().size() || a.maximal_cones().size() != b.maximal_cones().size()) return false;

  std::map<LatticeVector, std::size_t> target;
  for (std::size_t i = 0; i < b.rays().size(); ++i) target.emplace(b.rays()[i], i);
  std::vector<std::size_t> image(a.rays().size());
  std::vector<bool> hit(b.rays().size(), false);
  for (std::size_t i = 0; i < a.rays().size(); ++i) {
    auto it = target.find(u * a.rays()[i]);
    if (it == target.end() || hit[it->second]) return false;
    hit[it->second] = true;
    image[i] = it->second;
  }
  const std::set<Cone> cones(b.maximal_cones().begin(), b.maximal_cones().end());
  for (const auto& c : a.maximal_cones()) {
    std::vector<std::size_t> idx;
    for (auto r : c.rays()) idx.push_back(image[r]);
    if (!cones.contains(Cone(std::move(idx)))) return false;
  }
  return true;
}

std::optional<IntegerMatrix> isomorphic(const Fan& a, const Fan& b) {
  if (a.dim() != b.dim()) return std::nullopt;
  require_smooth_complete(a, "isomorphic (first fan)");
  require_smooth_complete(b, "isomorphic (second fan)");
  if (a.rays().size() != b.rays().size() || a.maximal_cones().size() != b.maximal_cones().size())
    return std::nullopt;

  const auto n = static_cast<std::size_t>(a.dim());
  const auto source_inv = inverse_unimodular(IntegerMatrix::from_columns(a.cone_rays(a.maximal_cones().front()), n));
  for (const auto& cone : b.maximal_cones()) {
    auto order = cone.rays();
    do {
      std::vector<LatticeVector> cols;
      for (auto r : order) cols.push_back(b.rays()[r]);
      const auto u = IntegerMatrix::from_columns(cols, n) * source_inv;
      if (is_isomorphism(u, a, b)) return u;
    } while (std::next_permutation(order.begin(), order.end()));
  }
  return std::nullopt;
}

}  // namespace toricsplit
