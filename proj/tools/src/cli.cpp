#include "toricsplit/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <limits>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "acceptance.hpp"
#include "generators.hpp"
#include "toricsplit/error.hpp"
#include "toricsplit/factorize.hpp"
#include "toricsplit/fan_io.hpp"
#include "toricsplit/recovery.hpp"
#include "toricsplit/squarezero.hpp"

namespace toricsplit::cli {

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Fan load_fan(const std::string& path) {
  const auto text = read_file(path);
  try {
    return parse_fan_json(text);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what(), e.position());
  }
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text << "\n";
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << text << "\n")) throw Error("cannot write " + path);
  out << "wrote " << path << "\n";
}

json matrix_json(const IntegerMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

json big_json(const BigInt& v) {
  if (v <= std::numeric_limits<std::int64_t>::max() && v >= std::numeric_limits<std::int64_t>::min())
    return static_cast<std::int64_t>(v);
  return v.str();
}

std::string join_rays(const std::vector<LatticeVector>& vs) {
  std::string s;
  for (const auto& v : vs) s += (s.empty() ? "" : " ") + v.to_string();
  return s;
}

std::string cones_text(const Fan& f) {
  std::string s;
  for (const auto& c : f.maximal_cones()) {
    s += s.empty() ? "{" : " {";
    for (std::size_t i = 0; i < c.rays().size(); ++i) s += (i ? "," : "") + std::to_string(c.rays()[i]);
    s += "}";
  }
  return s;
}

// Names small factors: CP1, CP2 or a Hirzebruch surface.
std::string recognize(const Fan& f) {
  if (!validate(f).all()) return "";
  if (f.dim() == 1) return "CP1";
  if (f.dim() != 2) return "";
  if (f.rays().size() == 3) return "CP2";
  if (f.rays().size() != 4) return "";
  std::int64_t bound = 0;
  for (const auto& v : f.rays())
    for (auto x : v.coords()) bound = std::max(bound, x < 0 ? -x : x);
  for (std::int64_t a = 0; a <= 2 * bound + 1; ++a)
    if (isomorphic(f, hirzebruch(a))) return a == 0 ? "CP1 x CP1" : "F" + std::to_string(a);
  return "";
}

std::uint64_t closed_form_mod2(const ProductManifold& pm) {
  std::int64_t total = 0;
  for (const auto& k : pm.factors()) total += closed_count_mod2(k);
  return static_cast<std::uint64_t>(total);
}

json census_json(const RealCensus& c) {
  json comps = json::object();
  for (const auto& [d, n] : c.components()) comps[d.to_string()] = n;
  return json{{"components", comps}, {"total", c.total()}};
}

json poly_json(const Polynomial& p) {
  json coeffs = json::array();
  for (const auto& c : p.coeffs()) coeffs.push_back(big_json(c));
  return coeffs;
}

struct Context {
  bool as_json = false;
  std::ostream& out;
};

// ---------------------------------------------------------------------------

int fan_validate(const Context& cx, const std::string& file) {
  const auto r = validate(load_fan(file));
  if (cx.as_json) cx.out << report_to_json(r) << "\n";
  else cx.out << r.to_string() << "\n" << (r.all() ? "smooth complete" : "not a smooth complete fan") << "\n";
  return kOk;
}

int fan_product(const Context& cx, const std::string& a, const std::string& b, const std::string& dest) {
  emit(dest, fan_to_json(product(load_fan(a), load_fan(b)), 2), cx.out);
  return kOk;
}

int fan_factor(const Context& cx, const std::string& file) {
  const auto res = factorize(load_fan(file));
  if (cx.as_json) {
    cx.out << factorization_to_json(res) << "\n";
    return kOk;
  }
  cx.out << res.blocks.size() << (res.blocks.size() == 1 ? " block" : " blocks") << "\n";
  for (std::size_t i = 0; i < res.blocks.size(); ++i) {
    const auto& b = res.blocks[i];
    const auto name = recognize(b.factor);
    cx.out << "block " << i + 1 << ": dim " << b.factor.dim() << ", " << b.factor.rays().size() << " rays, "
           << b.factor.maximal_cones().size() << " cones" << (name.empty() ? "" : " (" + name + ")") << "\n"
           << "  sub_basis: " << join_rays(b.sub_basis) << "\n"
           << "  rays: " << join_rays(b.factor.rays()) << "\n"
           << "  cones: " << cones_text(b.factor) << "\n";
  }
  cx.out << "change of basis: " << res.change_of_basis << "\n";
  return kOk;
}

int fan_iso(const Context& cx, const std::string& a, const std::string& b) {
  const auto fa = load_fan(a), fb = load_fan(b);
  const auto cert = isomorphic(fa, fb);
  if (cx.as_json) {
    json doc{{"isomorphic", cert.has_value()}};
    if (cert) doc["certificate"] = matrix_json(*cert);
    cx.out << doc.dump() << "\n";
  } else if (cert) {
    cx.out << "ISOMORPHIC\n" << "certificate: " << *cert << "\n";
  } else {
    cx.out << "NOT ISOMORPHIC\n";
  }
  return kOk;
}

int fan_gen(const Context& cx, const std::string& kind, const std::vector<std::int64_t>& params, const std::string& dest) {
  auto want = [&](std::size_t n) {
    if (params.size() != n)
      throw ParseError("fan-gen " + kind + " takes " + std::to_string(n) + (n == 1 ? " argument" : " arguments"));
  };
  Fan f = [&] {
    if (kind == "hirzebruch") {
      want(1);
      if (params[0] < 0) throw DomainError("hirzebruch parameter must be >= 0");
      return hirzebruch(params[0]);
    }
    if (kind == "proj") {
      want(1);
      if (params[0] < 1 || params[0] > kMaxDimension) throw DomainError("proj needs 1 <= N <= " + std::to_string(kMaxDimension));
      return projective_fan(static_cast<int>(params[0]));
    }
    want(0);
    const auto f0 = hirzebruch(0);
    return blowup_at_cone(f0, f0.maximal_cones().front());
  }();
  emit(dest, fan_to_json(f, 2), cx.out);
  return kOk;
}

int mf_profile(const Context& cx, const std::string& desc) {
  const auto p = product_profile(parse_product(desc));
  if (cx.as_json) {
    json products = json::array();
    for (int j = 0; j < p.b2(); ++j)
      for (int i = 0; i <= j; ++i) {
        const auto& e = p.product(i, j);
        if (std::any_of(e.begin(), e.end(), [](std::int64_t x) { return x != 0; }))
          products.push_back(json{{"i", p.labels()[static_cast<std::size_t>(i)]},
                                  {"j", p.labels()[static_cast<std::size_t>(j)]},
                                  {"value", e}});
      }
    cx.out << json{{"b2", p.b2()}, {"b4", p.b4()}, {"labels", p.labels()}, {"products", products}}.dump() << "\n";
    return kOk;
  }
  cx.out << "b2 = " << p.b2() << ", b4 = " << p.b4() << "\n" << "H2 basis:";
  for (const auto& l : p.labels()) cx.out << " " << l;
  cx.out << "\n";
  for (int j = 0; j < p.b2(); ++j)
    for (int i = 0; i <= j; ++i) {
      const auto& e = p.product(i, j);
      if (std::none_of(e.begin(), e.end(), [](std::int64_t x) { return x != 0; })) continue;
      cx.out << p.labels()[static_cast<std::size_t>(i)] << "*" << p.labels()[static_cast<std::size_t>(j)] << " = "
             << LatticeVector(e) << "\n";
    }
  return kOk;
}

int mf_count(const Context& cx, const std::string& desc, std::int64_t m, const CountOptions& opts) {
  const auto pm = parse_product(desc);
  const auto n = count_square_zero(product_profile(pm), m, opts);
  if (m != 2) {
    if (cx.as_json) cx.out << json{{"count", n}, {"modulus", m}}.dump() << "\n";
    else cx.out << n << "\n";
    return kOk;
  }
  const auto closed = closed_form_mod2(pm);
  if (cx.as_json)
    cx.out << json{{"count", n}, {"modulus", m}, {"closed_form", closed}, {"match", closed == n}}.dump() << "\n";
  else
    cx.out << n << " (closed form " << closed << ", " << (closed == n ? "MATCH" : "MISMATCH") << ")\n";
  return kOk;
}

int mf_census(const Context& cx, const std::string& desc) {
  const auto c = real_census(parse_product(desc));
  if (cx.as_json) cx.out << census_json(c).dump() << "\n";
  else cx.out << c.to_string() << "\n";
  return kOk;
}

int mf_poincare(const Context& cx, const std::string& desc) {
  const auto p = poincare(parse_product(desc));
  if (cx.as_json) cx.out << json{{"coefficients", poly_json(p)}}.dump() << "\n";
  else cx.out << p.to_string() << "\n";
  return kOk;
}

int mf_normalize(const Context& cx, std::int64_t p, std::int64_t q, std::int64_t r) {
  for (auto v : {p, q, r})
    if (v < 0 || v > 1'000'000) throw DomainError("multiplicities must lie in [0, 1000000]");
  const int ip = static_cast<int>(p), iq = static_cast<int>(q), ir = static_cast<int>(r);
  const auto k = normalize(ip, iq, ir);
  const auto inv = top_invariants(ip, iq, ir);
  if (cx.as_json) {
    cx.out << json{{"normal_form", k.to_string()}, {"chi", inv.chi}, {"sigma", inv.sigma}, {"spin", inv.spin}}.dump()
           << "\n";
  } else {
    cx.out << "S4 # " << p << " CP2 # " << q << " CP2bar # " << r << " (CP1 x CP1) -> " << k.to_string() << "\n"
           << "chi = " << inv.chi << ", sigma = " << inv.sigma << ", spin = " << (inv.spin ? "yes" : "no") << "\n";
  }
  return kOk;
}

int recover_cmd(const Context& cx, const std::string& desc) {
  const auto pm = parse_product(desc);
  const auto b = bundle(pm);
  const auto v = recover(b);
  const bool ok = same_decomposition(realize(v), pm);
  if (cx.as_json) {
    cx.out << json{{"bundle", json::parse(bundle_to_json(b))},
                   {"recovered", v.to_string()},
                   {"product", realize(v).to_string()},
                   {"ok", ok}}
                  .dump()
           << "\n";
  } else {
    cx.out << "bundle: " << bundle_to_json(b, 2) << "\n"
           << "recovered: " << v.to_string() << "\n"
           << "product: " << realize(v).to_string() << "\n"
           << (ok ? "OK" : "FAIL") << "\n";
  }
  return ok ? kOk : kDomain;
}

int selftest(const Context& cx, std::uint64_t seed) {
  const auto results = testing::run_acceptance(seed);
  const bool all = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });
  if (cx.as_json) {
    json rows = json::array();
    for (const auto& r : results)
      rows.push_back(json{{"id", r.id}, {"title", r.title}, {"passed", r.passed}, {"detail", r.detail},
                          {"seconds", r.seconds}, {"limit_seconds", r.limit_seconds}});
    cx.out << json{{"criteria", rows}, {"passed", all}, {"seed", seed}}.dump() << "\n";
  } else {
    for (const auto& r : results) cx.out << testing::format_result(r) << "\n";
    cx.out << (all ? "all criteria pass" : "some criteria FAIL") << "\n";
  }
  return all ? kOk : kDomain;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Smooth complete fans and square-zero cohomology classes", "toricsplit"};
  app.require_subcommand(1);
  Context cx{false, out};
  app.add_flag("--json", cx.as_json, "Emit canonical JSON instead of text");

  std::function<int()> action;
  auto command = [&](const std::string& name, const std::string& help) {
    auto* sub = app.add_subcommand(name, help);
    sub->fallthrough();
    return sub;
  };

  std::string file_a, file_b, dest, desc, kind;
  std::vector<std::int64_t> params;
  std::int64_t modulus = 2, np = 0, nq = 0, nr = 0;
  CountOptions opts;
  std::uint64_t seed = testing::kDefaultSeed;

  auto* sub = command("fan-validate", "Print the validation flags of a fan file");
  sub->add_option("file", file_a, "Fan JSON file")->required();
  sub->callback([&] { action = [&] { return fan_validate(cx, file_a); }; });

  sub = command("fan-product", "Product of two fans");
  sub->add_option("first", file_a)->required();
  sub->add_option("second", file_b)->required();
  sub->add_option("-o,--output", dest, "Write the fan here instead of stdout");
  sub->callback([&] { action = [&] { return fan_product(cx, file_a, file_b, dest); }; });

  sub = command("fan-factor", "Split a smooth complete fan into indecomposable factors");
  sub->add_option("file", file_a)->required();
  sub->callback([&] { action = [&] { return fan_factor(cx, file_a); }; });

  sub = command("fan-iso", "Isomorphism certificate between two fans");
  sub->add_option("first", file_a)->required();
  sub->add_option("second", file_b)->required();
  sub->callback([&] { action = [&] { return fan_iso(cx, file_a, file_b); }; });

  sub = command("fan-gen", "Emit a standard fan: hirzebruch A | proj N | f0-blowup");
  sub->add_option("kind", kind)->required()->check(CLI::IsMember({"hirzebruch", "proj", "f0-blowup"}));
  sub->add_option("params", params);
  sub->add_option("-o,--output", dest, "Write the fan here instead of stdout");
  sub->callback([&] { action = [&] { return fan_gen(cx, kind, params, dest); }; });

  sub = command("mf-profile", "Degree 2 and 4 cup-product table of a product descriptor");
  sub->add_option("descriptor", desc)->required();
  sub->callback([&] { action = [&] { return mf_profile(cx, desc); }; });

  sub = command("mf-count", "Count square-zero classes over Z/m");
  sub->add_option("descriptor", desc)->required();
  sub->add_option("--mod", modulus, "Modulus m >= 2")->required();
  sub->add_option("--threads", opts.threads, "Worker threads")->check(CLI::Range(1u, 256u));
  sub->add_option("--budget", opts.budget, "Largest number of enumerated classes");
  sub->callback([&] { action = [&] { return mf_count(cx, desc, modulus, opts); }; });

  sub = command("mf-census", "Connected components of the real square-zero set");
  sub->add_option("descriptor", desc)->required();
  sub->callback([&] { action = [&] { return mf_census(cx, desc); }; });

  sub = command("mf-poincare", "Poincare polynomial");
  sub->add_option("descriptor", desc)->required();
  sub->callback([&] { action = [&] { return mf_poincare(cx, desc); }; });

  sub = command("mf-normalize", "Normal form of S4 # p CP2 # q CP2bar # r (CP1 x CP1)");
  sub->add_option("p", np)->required();
  sub->add_option("q", nq)->required();
  sub->add_option("r", nr)->required();
  sub->callback([&] { action = [&] { return mf_normalize(cx, np, nq, nr); }; });

  sub = command("recover", "Recover the factor multiset from the invariant bundle");
  sub->add_option("descriptor", desc)->required();
  sub->callback([&] { action = [&] { return recover_cmd(cx, desc); }; });

  sub = command("selftest", "Run every acceptance criterion");
  sub->add_option("--seed", seed, "Random seed");
  sub->callback([&] { action = [&] { return selftest(cx, seed); }; });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kParse;
  }

  try {
    return action();
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const ResourceError& e) {
    err << "resource error: " << e.what() << "\n";
    return kResource;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kDomain;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kDomain;
  }
}

}  // namespace toricsplit::cli
