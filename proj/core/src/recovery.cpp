#include "toricsplit/recovery.hpp"

#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "toricsplit/checked.hpp"
#include "toricsplit/error.hpp"

namespace toricsplit {

using nlohmann::json;

std::string ClassKey::to_string() const {
  if (line) return "LINE";
  return "(" + std::to_string(s) + "," + std::to_string(s) + ")";
}

std::int64_t InvariantBundle::mod2_count(const ClassKey& k) const {
  auto it = class_mod2_counts.find(k);
  return it == class_mod2_counts.end() ? 0 : it->second;
}

std::string MultiplicityVector::to_string() const {
  std::ostringstream os;
  os << "m=" << m;
  for (const auto& [pq, c] : m_pq) os << ", m_{" << pq.first << "," << pq.second << "}=" << c;
  for (const auto& [r, c] : n_r) os << ", n_" << r << "=" << c;
  os << ", n=" << n;
  return os.str();
}

namespace {

void require_alphabet(const ProductManifold& pm) {
  for (const auto& k : pm.factors())
    if (k.tag() == FactorKind::Tag::Diag && k.r() == 1)
      throw AlphabetError("DIAG(1) = CP1 x CP1 is outside the recovery alphabet; use CP1^2");
}

// Which census class a factor's square-zero classes live in, if any.
std::optional<ClassKey> class_of(const FactorKind& k) {
  switch (k.tag()) {
    case FactorKind::Tag::ProjLine: return ClassKey::line_class();
    case FactorKind::Tag::PQ:
      if (k.p() == k.q()) return k.p() == 1 ? ClassKey::line_class() : ClassKey::sphere_class(k.p() - 1);
      return std::nullopt;
    case FactorKind::Tag::Diag: return k.r() == 1 ? ClassKey::line_class() : ClassKey::sphere_class(k.r() - 1);
    case FactorKind::Tag::FourSphere: return std::nullopt;
  }
  return std::nullopt;
}

[[noreturn]] void inconsistent(const std::string& why) { throw InconsistentBundleError("inconsistent bundle: " + why); }

}  // namespace

ProductManifold realize(const MultiplicityVector& v) {
  std::vector<FactorKind> out;
  auto put = [&](const FactorKind& k, std::int64_t times) {
    if (times < 0) throw DomainError("negative multiplicity");
    out.insert(out.end(), static_cast<std::size_t>(times), k);
  };
  put(FactorKind::proj_line(), v.m);
  for (const auto& [pq, c] : v.m_pq) put(FactorKind::pq(pq.first, pq.second), c);
  for (const auto& [r, c] : v.n_r) {
    if (r < 2) throw AlphabetError("n_r requires r >= 2");
    put(FactorKind::diag(r), c);
  }
  put(FactorKind::four_sphere(), v.n);
  return ProductManifold(std::move(out));
}

MultiplicityVector multiplicities(const ProductManifold& pm) {
  require_alphabet(pm);
  MultiplicityVector v;
  for (const auto& k : pm.factors()) switch (k.tag()) {
      case FactorKind::Tag::ProjLine: ++v.m; break;
      case FactorKind::Tag::PQ: ++v.m_pq[{k.p(), k.q()}]; break;
      case FactorKind::Tag::Diag: ++v.n_r[k.r()]; break;
      case FactorKind::Tag::FourSphere: ++v.n; break;
    }
  return v;
}

InvariantBundle bundle(const ProductManifold& pm) {
  require_alphabet(pm);
  InvariantBundle b;
  b.census = real_census(pm);
  for (const auto& k : pm.factors())
    if (auto key = class_of(k)) {
      auto& slot = b.class_mod2_counts[*key];
      slot = checked::add(slot, closed_count_mod2(k));
    }
  b.poincare_poly = poincare(pm);
  b.complex_dim = pm.complex_dim();
  return b;
}

std::pair<std::int64_t, std::map<int, std::int64_t>> disentangle_poincare(const Polynomial& poly) {
  if (poly.is_zero()) inconsistent("zero Poincare polynomial");
  Polynomial q = poly;
  const BigInt linear = q.coeff(1);
  if (linear < 0) inconsistent("negative linear coefficient " + linear.str());
  if (linear > 1'000'000) inconsistent("linear coefficient " + linear.str() + " out of range");

  std::map<int, std::int64_t> m_p0;
  for (int p = static_cast<int>(linear); p >= 1; --p) {
    const Polynomial f{1, p, 1};
    while (auto d = q.divide_exact(f)) {
      q = std::move(*d);
      ++m_p0[p];
    }
  }
  std::int64_t n = 0;
  const Polynomial sphere{1, 0, 1};
  while (q.degree() > 0) {
    auto d = q.divide_exact(sphere);
    if (!d) break;
    q = std::move(*d);
    ++n;
  }
  if (q != Polynomial::one()) inconsistent("Poincare quotient " + q.to_string() + " is not 1");
  return {n, std::move(m_p0)};
}

MultiplicityVector recover(const InvariantBundle& b) {
  MultiplicityVector v;
  std::map<int, std::int64_t> diag_components;  // s -> number of (s,s) components

  // (i) Off-diagonal sphere classes read off directly.
  for (const auto& [c, count] : b.census.components()) {
    if (c.is_line()) continue;
    if (c.a() == 0) {
      if (count % 2 != 0) inconsistent("odd number of S^b x R components for b = " + std::to_string(c.b()));
      v.m_pq[{c.b() + 1, 1}] += count / 2;
    } else if (c.a() < c.b()) {
      v.m_pq[{c.b() + 1, c.a() + 1}] += count;
    } else {
      diag_components[c.a()] = count;
    }
  }

  for (const auto& [key, count] : b.class_mod2_counts) {
    if (count < 0) inconsistent("negative Z/2 count for " + key.to_string());
    if (!key.line && !diag_components.contains(key.s) && count != 0)
      inconsistent("Z/2 count for " + key.to_string() + " without matching components");
  }

  // (ii) Lines: 2m + 4 m_{1,1} components and m + m_{1,1} classes over Z/2.
  {
    const auto lines = b.census.count(ComponentDescriptor::line());
    const auto c = b.mod2_count(ClassKey::line_class());
    const auto twice_m11 = lines - 2 * c;
    if (twice_m11 < 0 || twice_m11 % 2 != 0) inconsistent("line census does not fit 2m + 4m_{1,1}");
    const auto m11 = twice_m11 / 2;
    const auto m = c - m11;
    if (m < 0) inconsistent("negative CP1 multiplicity");
    v.m = m;
    if (m11 > 0) v.m_pq[{1, 1}] += m11;
  }

  // (iii) (s,s) classes shared by PQ(p,p) and DIAG(p), p = s + 1.
  for (const auto& [s, count] : diag_components) {
    const int p = s + 1;
    const auto c = b.mod2_count(ClassKey::sphere_class(s));
    const auto a = checked::pow2(2 * p - 1) - 1;
    const auto step = checked::pow2(p - 1);  // difference of the two per-factor counts
    const auto excess = checked::sub(c, checked::mul(a, count));
    if (excess < 0 || excess % step != 0) inconsistent("Z/2 count for " + ClassKey::sphere_class(s).to_string());
    const auto np = excess / step;
    if (np > count) inconsistent("more DIAG factors than (s,s) components");
    if (count - np > 0) v.m_pq[{p, p}] += count - np;
    if (np > 0) v.n_r[p] += np;
  }

  // (iv) Divide out everything recovered so far; what is left must be
  // (1+x^2)^n * prod (1+px+x^2)^{m_{p,0}}.
  const auto so_far = realize(v);
  auto rest = b.poincare_poly.divide_exact(poincare(so_far));
  if (!rest) inconsistent("Poincare polynomial not divisible by recovered factors");
  auto [n, m_p0] = disentangle_poincare(*rest);
  v.n = n;
  for (const auto& [p, c] : m_p0) v.m_pq[{p, 0}] += c;

  if (bundle(realize(v)) != b) inconsistent("recovered product does not reproduce the bundle");
  return v;
}

bool same_decomposition(const ProductManifold& a, const ProductManifold& b) {
  require_alphabet(a);
  require_alphabet(b);
  return a == b;
}

bool cancellation_check(const ProductManifold& a, const ProductManifold& b, const ProductManifold& c) {
  const bool same = same_decomposition(a, b);
  const bool base_equal = bundle(a) == bundle(b);
  const bool extended_equal = bundle(a * c) == bundle(b * c);
  if (base_equal != extended_equal) throw std::logic_error("cancellation violated for " + a.to_string() + ", " +
                                                           b.to_string() + ", " + c.to_string());
  if (same != base_equal) throw std::logic_error("bundle equality disagrees with multiset equality");
  return same;
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

json big_to_json(const BigInt& x) {
  if (x >= INT64_MIN && x <= INT64_MAX) return static_cast<std::int64_t>(x);
  return x.str();
}

BigInt big_from_json(const json& j) {
  if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return BigInt(j.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  throw ParseError("poincare: coefficient " + j.dump() + " is not an integer");
}

ComponentDescriptor descriptor_from(const std::string& s) {
  if (s == "LINE") return ComponentDescriptor::line();
  int a = 0, b = 0;
  char close = 0;
  std::istringstream is(s);
  char open = 0, comma = 0;
  if ((is >> open >> a >> comma >> b >> close) && open == '(' && comma == ',' && close == ')' && is.peek() == EOF) {
    try {
      return ComponentDescriptor::spheres(a, b);
    } catch (const DomainError&) {
    }
  }
  throw ParseError("census: unknown component \"" + s + "\"");
}

ClassKey key_from(const std::string& s) {
  const auto d = descriptor_from(s);
  if (d.is_line()) return ClassKey::line_class();
  if (d.a() != d.b()) throw ParseError("class_mod2_counts: key \"" + s + "\" is not diagonal");
  return ClassKey::sphere_class(d.a());
}

}  // namespace

std::string bundle_to_json(const InvariantBundle& b, int indent) {
  json census = json::object();
  for (const auto& [c, n] : b.census.components()) census[c.to_string()] = n;
  json counts = json::object();
  for (const auto& [k, n] : b.class_mod2_counts) counts[k.to_string()] = n;
  json poly = json::array();
  for (const auto& c : b.poincare_poly.coeffs()) poly.push_back(big_to_json(c));
  return json{{"census", census}, {"class_mod2_counts", counts}, {"poincare", poly}, {"complex_dim", b.complex_dim}}
      .dump(indent);
}

InvariantBundle bundle_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed bundle JSON: ") + e.what(), e.byte);
  }
  if (!doc.is_object()) throw ParseError("bundle must be a JSON object");
  InvariantBundle b;
  try {
    for (const auto& [k, v] : doc.at("census").items()) b.census.add(descriptor_from(k), v.get<std::int64_t>());
    for (const auto& [k, v] : doc.at("class_mod2_counts").items()) b.class_mod2_counts[key_from(k)] = v.get<std::int64_t>();
    std::vector<BigInt> coeffs;
    for (const auto& c : doc.at("poincare")) coeffs.push_back(big_from_json(c));
    b.poincare_poly = Polynomial(std::move(coeffs));
    b.complex_dim = doc.at("complex_dim").get<int>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("bundle: ") + e.what());
  } catch (const DomainError& e) {
    throw ParseError(std::string("bundle: ") + e.what());
  }
  return b;
}

}  // namespace toricsplit
