#include "toricsplit/squarezero.hpp"

#include <algorithm>
#include <sstream>
#include <thread>

#include "toricsplit/checked.hpp"
#include "toricsplit/error.hpp"

namespace toricsplit {

// ---------------------------------------------------------------------------
// QuadraticProfile

QuadraticProfile::QuadraticProfile(int b2, int b4, std::vector<std::string> labels)
    : b2_(b2), b4_(b4), labels_(std::move(labels)) {
  if (b2 < 0 || b4 < 0) throw DomainError("negative Betti number in profile");
  if (labels_.size() != static_cast<std::size_t>(b2)) throw DomainError("profile needs one label per degree-2 class");
  const auto n = static_cast<std::size_t>(b2);
  table_.assign(n * (n + 1) / 2, std::vector<std::int64_t>(static_cast<std::size_t>(b4), 0));
}

std::size_t QuadraticProfile::slot(int i, int j) const {
  if (i < 0 || j < 0 || i >= b2_ || j >= b2_) throw DimensionError("profile index out of range");
  if (i > j) std::swap(i, j);
  const auto ui = static_cast<std::size_t>(i), uj = static_cast<std::size_t>(j);
  return uj * (uj + 1) / 2 + ui;
}

const std::vector<std::int64_t>& QuadraticProfile::product(int i, int j) const { return table_[slot(i, j)]; }

void QuadraticProfile::set_product(int i, int j, std::vector<std::int64_t> value) {
  if (value.size() != static_cast<std::size_t>(b4_)) throw DimensionError("product vector must have length b4");
  table_[slot(i, j)] = std::move(value);
}

std::vector<std::int64_t> QuadraticProfile::expand(std::span<const std::int64_t> u, std::int64_t cross) const {
  if (u.size() != static_cast<std::size_t>(b2_)) throw DimensionError("class has wrong number of coordinates");
  std::vector<std::int64_t> out(static_cast<std::size_t>(b4_), 0);
  for (int j = 0; j < b2_; ++j)
    for (int i = 0; i <= j; ++i) {
      const auto uij = checked::mul(u[static_cast<std::size_t>(i)], u[static_cast<std::size_t>(j)]);
      if (uij == 0) continue;
      const auto w = i == j ? uij : checked::mul(cross, uij);
      const auto& e = product(i, j);
      for (std::size_t k = 0; k < out.size(); ++k) out[k] = checked::add(out[k], checked::mul(w, e[k]));
    }
  return out;
}

std::vector<std::int64_t> QuadraticProfile::square(std::span<const std::int64_t> u) const { return expand(u, 2); }

std::vector<std::int64_t> QuadraticProfile::polar_square(std::span<const std::int64_t> u) const {
  return expand(u, 1);
}

QuadraticProfile profile(const FactorKind& k) {
  std::vector<std::string> labels;
  switch (k.tag()) {
    case FactorKind::Tag::ProjLine:
      return QuadraticProfile(1, 0, {"x"});
    case FactorKind::Tag::FourSphere:
      return QuadraticProfile(0, 1, {});
    case FactorKind::Tag::PQ: {
      for (int i = 1; i <= k.p(); ++i) labels.push_back("x" + std::to_string(i));
      for (int j = 1; j <= k.q(); ++j) labels.push_back("y" + std::to_string(j));
      QuadraticProfile prof(k.b2(), 1, std::move(labels));
      for (int i = 0; i < k.p(); ++i) prof.set_product(i, i, {1});
      for (int j = k.p(); j < k.b2(); ++j) prof.set_product(j, j, {-1});
      return prof;
    }
    case FactorKind::Tag::Diag: {
      for (int i = 1; i <= k.r(); ++i) labels.push_back("z" + std::to_string(i));
      for (int i = 1; i <= k.r(); ++i) labels.push_back("w" + std::to_string(i));
      QuadraticProfile prof(k.b2(), 1, std::move(labels));
      for (int i = 0; i < k.r(); ++i) prof.set_product(i, k.r() + i, {1});
      return prof;
    }
  }
  throw DomainError("unknown factor kind");
}

QuadraticProfile product_profile(std::span<const QuadraticProfile> ps) {
  if (ps.size() == 1) return ps.front();

  int b2 = 0, b4 = 0;
  std::vector<int> off2, off4;
  for (const auto& p : ps) {
    off2.push_back(b2);
    off4.push_back(b4);
    b2 += p.b2();
    b4 += p.b4();
  }
  // Tensor blocks follow the factors' own degree-4 parts, pairs in lex order.
  std::vector<std::vector<int>> pair_off(ps.size(), std::vector<int>(ps.size(), -1));
  for (std::size_t i = 0; i < ps.size(); ++i)
    for (std::size_t j = i + 1; j < ps.size(); ++j) {
      pair_off[i][j] = b4;
      b4 += ps[i].b2() * ps[j].b2();
    }

  std::vector<std::string> labels;
  for (std::size_t i = 0; i < ps.size(); ++i)
    for (const auto& l : ps[i].labels()) labels.push_back(std::to_string(i + 1) + "." + l);

  QuadraticProfile out(b2, b4, std::move(labels));
  const auto zero = std::vector<std::int64_t>(static_cast<std::size_t>(b4), 0);
  for (std::size_t f = 0; f < ps.size(); ++f)
    for (int a = 0; a < ps[f].b2(); ++a)
      for (int b = a; b < ps[f].b2(); ++b) {
        auto v = zero;
        const auto& e = ps[f].product(a, b);
        std::copy(e.begin(), e.end(), v.begin() + off4[f]);
        out.set_product(off2[f] + a, off2[f] + b, std::move(v));
      }
  for (std::size_t i = 0; i < ps.size(); ++i)
    for (std::size_t j = i + 1; j < ps.size(); ++j)
      for (int a = 0; a < ps[i].b2(); ++a)
        for (int b = 0; b < ps[j].b2(); ++b) {
          auto v = zero;
          v[static_cast<std::size_t>(pair_off[i][j] + a * ps[j].b2() + b)] = 1;
          out.set_product(off2[i] + a, off2[j] + b, std::move(v));
        }
  return out;
}

QuadraticProfile product_profile(const ProductManifold& pm) {
  std::vector<QuadraticProfile> ps;
  for (const auto& k : pm.factors()) ps.push_back(profile(k));
  if (ps.empty()) return QuadraticProfile(0, 0, {});
  return product_profile(ps);
}

// ---------------------------------------------------------------------------
// Enumeration over Z/m

namespace {

struct Term {
  std::size_t i, j;
  std::int64_t coef;  // already reduced mod m, factor 2 folded in for i != j
};

std::uint64_t count_range(const std::vector<std::vector<Term>>& by_k, std::size_t b2, std::int64_t m,
                          std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::int64_t> u(b2, 0);
  auto idx = lo;
  for (std::size_t d = 0; d < b2; ++d) {
    u[d] = static_cast<std::int64_t>(idx % static_cast<std::uint64_t>(m));
    idx /= static_cast<std::uint64_t>(m);
  }
  std::uint64_t hits = 0;
  for (auto s = lo; s < hi; ++s) {
    if (s != 0) {
      bool zero = true;
      for (const auto& terms : by_k) {
        std::int64_t acc = 0;
        for (const auto& t : terms) acc = (acc + (t.coef * u[t.i] % m) * u[t.j]) % m;
        if (acc != 0) {
          zero = false;
          break;
        }
      }
      if (zero) ++hits;
    }
    // odometer step, least significant coordinate first
    for (std::size_t d = 0; d < b2; ++d) {
      if (++u[d] < m) break;
      u[d] = 0;
    }
  }
  return hits;
}

}  // namespace

std::uint64_t count_square_zero(const QuadraticProfile& p, std::int64_t modulus, const CountOptions& opts) {
  if (modulus < 2) throw DomainError("modulus must be at least 2");
  if (modulus > (std::int64_t{1} << 31)) throw DomainError("modulus too large for enumeration");
  const auto b2 = static_cast<std::size_t>(p.b2());

  std::uint64_t states = 1;
  for (std::size_t d = 0; d < b2; ++d) {
    if (states > opts.budget / static_cast<std::uint64_t>(modulus))
      throw ResourceError("enumeration budget exceeded: " + std::to_string(modulus) + "^" + std::to_string(b2) +
                          " states > budget " + std::to_string(opts.budget));
    states *= static_cast<std::uint64_t>(modulus);
  }
  if (states > opts.budget)
    throw ResourceError("enumeration budget exceeded: " + std::to_string(states) + " states > budget " +
                        std::to_string(opts.budget));

  std::vector<std::vector<Term>> by_k(static_cast<std::size_t>(p.b4()));
  for (int j = 0; j < p.b2(); ++j)
    for (int i = 0; i <= j; ++i) {
      const auto& e = p.product(i, j);
      for (std::size_t k = 0; k < e.size(); ++k) {
        std::int64_t c = e[k] % modulus;
        if (c < 0) c += modulus;
        if (c != 0) by_k[k].push_back(Term{static_cast<std::size_t>(i), static_cast<std::size_t>(j), c});
      }
    }
  // Coordinates with no terms never constrain anything.
  std::erase_if(by_k, [](const std::vector<Term>& t) { return t.empty(); });

  const auto workers = std::max<std::uint64_t>(1, std::min<std::uint64_t>(opts.threads, states));
  if (workers == 1) return count_range(by_k, b2, modulus, 0, states);

  std::vector<std::uint64_t> partial(workers, 0);
  {
    std::vector<std::jthread> pool;
    for (std::uint64_t w = 0; w < workers; ++w) {
      const auto lo = states * w / workers;
      const auto hi = states * (w + 1) / workers;
      pool.emplace_back([&, w, lo, hi] { partial[w] = count_range(by_k, b2, modulus, lo, hi); });
    }
  }
  std::uint64_t total = 0;
  for (auto x : partial) total += x;
  return total;
}

std::int64_t closed_count_mod2(const FactorKind& k) {
  switch (k.tag()) {
    case FactorKind::Tag::ProjLine: return 1;
    case FactorKind::Tag::PQ: return checked::pow2(k.p() + k.q() - 1) - 1;
    case FactorKind::Tag::Diag:
      return checked::sub(checked::add(checked::pow2(2 * k.r() - 1), checked::pow2(k.r() - 1)), 1);
    case FactorKind::Tag::FourSphere: return 0;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Real census

ComponentDescriptor ComponentDescriptor::spheres(int a, int b) {
  if (a > b) std::swap(a, b);
  if (a < 0 || b < 1) throw DomainError("sphere component needs dimensions a >= 0, b >= 1");
  return ComponentDescriptor(false, a, b);
}

std::string ComponentDescriptor::to_string() const {
  if (line_) return "LINE";
  return "(" + std::to_string(a_) + "," + std::to_string(b_) + ")";
}

void RealCensus::add(const ComponentDescriptor& c, std::int64_t times) {
  if (times < 0) throw DomainError("negative component multiplicity");
  if (times == 0) return;
  auto& slot = counts_[c];
  slot = checked::add(slot, times);
}

std::int64_t RealCensus::count(const ComponentDescriptor& c) const {
  auto it = counts_.find(c);
  return it == counts_.end() ? 0 : it->second;
}

std::int64_t RealCensus::total() const {
  std::int64_t t = 0;
  for (const auto& [c, n] : counts_) t = checked::add(t, n);
  return t;
}

RealCensus& RealCensus::operator+=(const RealCensus& o) {
  for (const auto& [c, n] : o.counts_) add(c, n);
  return *this;
}

std::string RealCensus::to_string() const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& [c, n] : counts_) {
    os << (first ? "" : ", ") << c.to_string() << " x" << n;
    first = false;
  }
  os << '}';
  return os.str();
}

RealCensus census_of_connected_sum(int p, int q) {
  if (p < 0 || q < 0 || p + q < 1) throw DomainError("connected sum needs p, q >= 0 and p + q >= 1");
  const int lo = std::min(p, q), hi = std::max(p, q);
  RealCensus c;
  if (lo == 0) return c;  // definite form: no nonzero isotropic classes
  if (hi == 1) {
    c.add(ComponentDescriptor::line(), 4);  // S^0 x S^0 x R
  } else if (lo == 1) {
    c.add(ComponentDescriptor::spheres(0, hi - 1), 2);  // S^0 x S^{hi-1} x R
  } else {
    c.add(ComponentDescriptor::spheres(lo - 1, hi - 1), 1);
  }
  return c;
}

RealCensus real_census(const FactorKind& k) {
  RealCensus c;
  switch (k.tag()) {
    case FactorKind::Tag::ProjLine: c.add(ComponentDescriptor::line(), 2); break;
    case FactorKind::Tag::PQ: c = census_of_connected_sum(k.p(), k.q()); break;
    case FactorKind::Tag::Diag:
      // Same real set as r CP^2 # r CP^2-bar after c = a + b, d = a - b.
      c = census_of_connected_sum(k.r(), k.r());
      break;
    case FactorKind::Tag::FourSphere: break;
  }
  return c;
}

RealCensus real_census(const ProductManifold& pm) {
  RealCensus c;
  for (const auto& k : pm.factors()) c += real_census(k);
  return c;
}

// ---------------------------------------------------------------------------
// Classical invariants

Polynomial poincare(const FactorKind& k) {
  switch (k.tag()) {
    case FactorKind::Tag::ProjLine: return Polynomial{1, 1};
    case FactorKind::Tag::PQ: return Polynomial{1, k.p() + k.q(), 1};
    case FactorKind::Tag::Diag: return Polynomial{1, 2 * static_cast<std::int64_t>(k.r()), 1};
    case FactorKind::Tag::FourSphere: return Polynomial{1, 0, 1};
  }
  return Polynomial::one();
}

Polynomial poincare(const ProductManifold& pm) {
  Polynomial acc = Polynomial::one();
  for (const auto& k : pm.factors()) acc *= poincare(k);
  return acc;
}

TopInvariants top_invariants(int p, int q, int r) {
  if (p < 0 || q < 0 || r < 0) throw DomainError("connected-sum multiplicities must be nonnegative");
  const std::int64_t lp = p, lq = q, lr = r;
  return TopInvariants{lp + lq + 2 * lr + 2, lp - lq, p + q == 0};
}

TopInvariants top_invariants(const FactorKind& k) {
  switch (k.tag()) {
    case FactorKind::Tag::PQ: return top_invariants(k.p(), k.q(), 0);
    case FactorKind::Tag::Diag: return top_invariants(0, 0, k.r());
    case FactorKind::Tag::FourSphere: return top_invariants(0, 0, 0);
    case FactorKind::Tag::ProjLine: break;
  }
  throw DomainError("CP1 is not a four-manifold");
}

FactorKind normalize(int p, int q, int r) {
  if (p < 0 || q < 0 || r < 0) throw DomainError("connected-sum multiplicities must be nonnegative");
  if (p + q == 0) return r == 0 ? FactorKind::four_sphere() : FactorKind::diag(r);
  // CP^2 # (CP^1 x CP^1) ~ 2CP^2 # CP^2-bar and CP^2-bar # (CP^1 x CP^1) ~ CP^2 # 2CP^2-bar.
  p += r;
  q += r;
  if (p < q) std::swap(p, q);
  return FactorKind::pq(p, q);
}

}  // namespace toricsplit
