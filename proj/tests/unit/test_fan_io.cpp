#include <catch_amalgamated.hpp>

#include <fstream>
#include <sstream>
#include <string>

#include "toricsplit/error.hpp"
#include "toricsplit/factorize.hpp"
#include "toricsplit/fan_io.hpp"

using namespace toricsplit;
using Catch::Matchers::ContainsSubstring;

namespace {

std::string data(const std::string& name) {
  std::ifstream in(std::string(TORICSPLIT_TEST_DATA_DIR) + "/" + name);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string parse_error(const std::string& text) {
  try {
    parse_fan_json(text);
  } catch (const ParseError& e) {
    return e.what();
  }
  FAIL("expected a parse error for " << text);
  return {};
}

}  // namespace

TEST_CASE("fan files from the data directory") {
  const auto f0 = parse_fan_json(data("F0.json"));
  CHECK(f0.same_as(hirzebruch(0)));
  CHECK(factorize(f0).blocks.size() == 2);
  CHECK(parse_fan_json(data("F1.json")).same_as(hirzebruch(1)));
  CHECK(parse_fan_json(data("cp2.json")).same_as(projective_fan(2)));
  CHECK(factorize(parse_fan_json(data("scrambled_cp2_x_cp1.json"))).blocks.size() == 2);
  CHECK_FALSE(validate(parse_fan_json(data("weighted_p112.json"))).smooth);
}

TEST_CASE("fan JSON round trip") {
  for (const auto& f : {hirzebruch(3), projective_fan(3), product(projective_fan(1), hirzebruch(2))}) {
    const auto text = fan_to_json(f);
    CHECK(parse_fan_json(text) == f);
    CHECK(parse_fan_json(fan_to_json(f, 2)) == f);
  }
  CHECK(fan_to_json(projective_fan(1)) == R"({"dim":1,"maximal_cones":[[0],[1]],"rays":[[1],[-1]]})");
}

TEST_CASE("fan JSON errors carry positions") {
  CHECK_THAT(parse_error(data("bad_syntax.json")), ContainsSubstring("line 3, column 27"));
  CHECK_THAT(parse_error(data("bad_index.json")), ContainsSubstring("maximal_cones[1][1]"));
  CHECK_THAT(parse_error(data("nonprimitive.json")), ContainsSubstring("rays[1]"));
  CHECK_THAT(parse_error("[1, 2]"), ContainsSubstring("object"));
  CHECK_THAT(parse_error(R"({"dim": 1, "rays": [[1], [-1]], "maximal_cones": [[0], [1]], "name": "x"})"),
             ContainsSubstring("unknown key \"name\""));
  CHECK_THAT(parse_error(R"({"rays": [[1], [-1]], "maximal_cones": [[0], [1]]})"), ContainsSubstring("\"dim\""));
  CHECK_THAT(parse_error(R"({"dim": 1, "maximal_cones": [[0], [1]]})"), ContainsSubstring("\"rays\""));
  CHECK_THAT(parse_error(R"({"dim": 0, "rays": [], "maximal_cones": []})"), ContainsSubstring("dim"));
  CHECK_THAT(parse_error(R"({"dim": 1, "rays": [[1], [0]], "maximal_cones": [[0], [1]]})"),
             ContainsSubstring("rays[1]: zero ray"));
  CHECK_THAT(parse_error(R"({"dim": 1, "rays": [[1], [1]], "maximal_cones": [[0], [1]]})"),
             ContainsSubstring("duplicates rays[0]"));
  CHECK_THAT(parse_error(R"({"dim": 2, "rays": [[1, 0], [0]], "maximal_cones": [[0, 1]]})"),
             ContainsSubstring("rays[1]: has 1 coordinates"));
  CHECK_THAT(parse_error(R"({"dim": 1, "rays": [[1.5], [-1]], "maximal_cones": [[0], [1]]})"),
             ContainsSubstring("rays[0][0]"));
  CHECK_THAT(parse_error(R"({"dim": 1, "rays": [[1], [-1]], "maximal_cones": [[0, 0], [1]]})"),
             ContainsSubstring("maximal_cones[0][1]: duplicate index"));
  CHECK_THAT(parse_error(R"({"dim": 1, "rays": [[1], [-1]], "maximal_cones": [[-1], [1]]})"),
             ContainsSubstring("maximal_cones[0][0]"));
  CHECK_THAT(parse_error(R"({"dim": 1, "rays": [[3000000], [-1]], "maximal_cones": [[0], [1]]})"),
             ContainsSubstring("exceeds"));
  CHECK_THAT(parse_error(R"({"dim": 2, "rays": [[1, 0], [0, 1], [1, 1]], "maximal_cones": [[0, 1]]})"),
             ContainsSubstring("fan structure"));
}

TEST_CASE("syntax errors report the byte offset") {
  const std::string text = "{\"dim\": 1,\n \"rays\": [[1] [-1]]}";
  try {
    parse_fan_json(text);
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.position() != ParseError::npos);
    CHECK(e.position() < text.size());
    CHECK_THAT(e.what(), ContainsSubstring("line 2"));
  }
  CHECK(describe_offset("ab\ncd", 4) == "line 2, column 2");
}
