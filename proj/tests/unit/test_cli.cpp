#include <catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "toricsplit/cli.hpp"
#include "toricsplit/fan_io.hpp"

using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::StartsWith;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = toricsplit::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(TORICSPLIT_TEST_DATA_DIR) + "/" + name; }

}  // namespace

TEST_CASE("mf-count prints the closed form over Z/2") {
  const auto r = run({"mf-count", "DIAG(2)", "--mod", "2"});
  CHECK(r.code == 0);
  CHECK(r.out == "9 (closed form 9, MATCH)\n");
  CHECK(run({"mf-count", "PQ(2,1) * CP1", "--mod", "2", "--threads", "3"}).out == "4 (closed form 4, MATCH)\n");
  CHECK(run({"mf-count", "PQ(2,2)", "--mod", "3"}).out == "32\n");
  const auto j = nlohmann::json::parse(run({"--json", "mf-count", "DIAG(3)", "--mod", "2"}).out);
  CHECK(j["count"] == 35);
  CHECK(j["match"] == true);
}

TEST_CASE("fan commands") {
  const auto f = run({"fan-factor", data("F0.json")});
  CHECK(f.code == 0);
  CHECK_THAT(f.out, StartsWith("2 blocks\n"));
  CHECK_THAT(f.out, ContainsSubstring("block 1: dim 1, 2 rays, 2 cones (CP1)"));
  CHECK_THAT(f.out, ContainsSubstring("block 2: dim 1, 2 rays, 2 cones (CP1)"));
  CHECK_THAT(f.out, ContainsSubstring("change of basis: [[1,0],[0,1]]"));

  CHECK_THAT(run({"fan-factor", data("F1.json")}).out, StartsWith("1 block\n"));
  CHECK_THAT(run({"fan-factor", data("scrambled_cp2_x_cp1.json")}).out, ContainsSubstring("(CP2)"));

  const auto j = nlohmann::json::parse(run({"fan-factor", data("F0.json"), "--json"}).out);
  CHECK(j["blocks"].size() == 2);

  CHECK_THAT(run({"fan-validate", data("F1.json")}).out, ContainsSubstring("smooth complete"));
  CHECK_THAT(run({"fan-validate", data("weighted_p112.json")}).out, ContainsSubstring("smooth=false"));

  CHECK(run({"fan-iso", data("F0.json"), data("F1.json")}).out == "NOT ISOMORPHIC\n");
  CHECK_THAT(run({"fan-iso", data("F1.json"), data("F1.json")}).out, StartsWith("ISOMORPHIC\n"));
}

TEST_CASE("fan-gen writes fan files") {
  const auto dir = std::filesystem::temp_directory_path() / "toricsplit_cli_test";
  std::filesystem::create_directories(dir);
  const auto blown = (dir / "blown.json").string();
  const auto prod = (dir / "prod.json").string();
  REQUIRE(run({"fan-gen", "f0-blowup", "-o", blown}).code == 0);
  CHECK_THAT(run({"fan-iso", blown, data("cp2_twice_blown_up.json")}).out, StartsWith("ISOMORPHIC\n"));
  const auto h = run({"fan-gen", "hirzebruch", "3"});
  CHECK(toricsplit::parse_fan_json(h.out).same_as(toricsplit::hirzebruch(3)));
  CHECK(toricsplit::parse_fan_json(run({"fan-gen", "proj", "3"}).out).same_as(toricsplit::projective_fan(3)));
  REQUIRE(run({"fan-product", data("cp2.json"), data("F0.json"), "-o", prod}).code == 0);
  CHECK_THAT(run({"fan-factor", prod}).out, StartsWith("3 blocks\n"));
  CHECK(run({"fan-gen", "proj"}).code == 2);
  CHECK(run({"fan-gen", "proj", "0"}).code == 1);
  CHECK(run({"fan-gen", "cube"}).code == 2);
  std::filesystem::remove_all(dir);
}

TEST_CASE("manifold commands") {
  CHECK(run({"mf-census", "CP1 * PQ(2,2)"}).out == "{(1,1) x1, LINE x2}\n");
  CHECK(run({"mf-poincare", "S4 * PQ(3,0)"}).out == "1 + 3x + 2x^2 + 3x^3 + x^4\n");
  const auto n = run({"mf-normalize", "1", "0", "1"});
  CHECK_THAT(n.out, ContainsSubstring("-> PQ(2,1)"));
  CHECK_THAT(n.out, ContainsSubstring("chi = 5, sigma = 1, spin = no"));
  CHECK(nlohmann::json::parse(run({"--json", "mf-normalize", "0", "2", "3"}).out)["normal_form"] == "PQ(5,3)");
  const auto p = run({"mf-profile", "PQ(1,1)"});
  CHECK_THAT(p.out, ContainsSubstring("b2 = 2, b4 = 1"));
  CHECK_THAT(p.out, ContainsSubstring("y1*y1 = (-1)"));
}

TEST_CASE("recover prints bundle, multiset and verdict") {
  const auto r = run({"recover", "CP1^2 * PQ(1,1)"});
  CHECK(r.code == 0);
  const auto bundle_at = r.out.find("bundle:");
  const auto multiset_at = r.out.find("recovered: m=2, m_{1,1}=1, n=0");
  const auto ok_at = r.out.find("\nOK\n");
  CHECK(bundle_at != std::string::npos);
  CHECK(multiset_at != std::string::npos);
  CHECK(ok_at != std::string::npos);
  CHECK(bundle_at < multiset_at);
  CHECK(multiset_at < ok_at);
  CHECK(nlohmann::json::parse(run({"recover", "PQ(2,2) * DIAG(2)", "--json"}).out)["ok"] == true);
  CHECK(run({"recover", "DIAG(1)"}).code == 1);
}

TEST_CASE("exit statuses") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"--help"}).code == 0);

  const auto parse = run({"mf-count", "PQ(1,", "--mod", "2"});
  CHECK(parse.code == 2);
  CHECK_THAT(parse.err, ContainsSubstring("position"));

  const auto domain = run({"mf-count", "CP1", "--mod", "1"});
  CHECK(domain.code == 1);

  const auto budget = run({"mf-count", "PQ(8,8) * PQ(8,8)", "--mod", "2"});
  CHECK(budget.code == 3);
  CHECK_THAT(budget.err, ContainsSubstring("budget"));
  CHECK(run({"mf-count", "PQ(3,3)", "--mod", "2", "--budget", "10"}).code == 3);

  const auto missing = run({"fan-validate", data("does_not_exist.json")});
  CHECK(missing.code == 2);
  CHECK_THAT(missing.err, ContainsSubstring("does_not_exist.json"));

  const auto bad = run({"fan-factor", data("bad_syntax.json")});
  CHECK(bad.code == 2);
  CHECK_THAT(bad.err, ContainsSubstring("line 3"));
  CHECK(run({"fan-factor", data("bad_index.json")}).code == 2);
  CHECK(run({"fan-factor", data("weighted_p112.json")}).code == 1);
  CHECK(run({"mf-normalize", "-1", "0", "0"}).code == 1);
  CHECK(run({"mf-normalize", "x", "0", "0"}).code == 2);
}

TEST_CASE("selftest passes") {
  const auto r = run({"selftest"});
  CHECK(r.code == 0);
  CHECK_THAT(r.out, ContainsSubstring("all criteria pass"));
  CHECK_THAT(r.out, ContainsSubstring("[PASS]  9"));
}
