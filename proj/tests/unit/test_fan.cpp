#include <catch_amalgamated.hpp>

#include "generators.hpp"
#include "oracles.hpp"
#include "toricsplit/error.hpp"
#include "toricsplit/factorize.hpp"
#include "toricsplit/fan.hpp"

using namespace toricsplit;
using toricsplit::testing::Rng;

namespace {

Fan cp1() { return Fan(1, {{1}, {-1}}, {{0}, {1}}); }

Fan two_point_blowup_of_cp2() {
  return Fan(2, {{1, 0}, {1, 1}, {0, 1}, {-1, 0}, {-1, -1}}, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}});
}

void check_factorization(const Fan& f, const FactorizationResult& r) {
  REQUIRE(reassemble(r).same_as(f));
  REQUIRE(is_unimodular(r.change_of_basis));
  std::size_t col = 0;
  for (const auto& b : r.blocks) {
    REQUIRE(b.sub_basis.size() == static_cast<std::size_t>(b.factor.dim()));
    REQUIRE(validate(b.factor).all());
    for (const auto& v : b.sub_basis) REQUIRE(r.change_of_basis.column(col++) == v);
  }
  REQUIRE(col == static_cast<std::size_t>(f.dim()));
}

}  // namespace

TEST_CASE("validate: small complete fans") {
  CHECK(validate(cp1()).all());
  CHECK(projective_fan(1).same_as(cp1()));
  for (int n = 1; n <= 4; ++n) CHECK(validate(projective_fan(n)).all());
  for (std::int64_t a = -3; a <= 6; ++a) CHECK(validate(hirzebruch(a)).all());
  CHECK(validate(two_point_blowup_of_cp2()).all());
  CHECK(validate(product(product(hirzebruch(1), hirzebruch(2)), product(hirzebruch(3), projective_fan(2)))).all());
}

TEST_CASE("validate: broken fans") {
  SECTION("a deleted cone breaks completeness only") {
    const Fan f(2, {{1, 0}, {0, 1}, {-1, 2}, {0, -1}}, {{0, 1}, {1, 2}, {2, 3}});
    const auto r = validate(f);
    CHECK_FALSE(r.complete);
    CHECK(r.smooth);
    CHECK(r.strongly_convex);
    CHECK(r.pairwise_faces);
  }
  SECTION("weighted projective plane is not smooth") {
    const auto r = validate(Fan(2, {{1, 0}, {0, 1}, {-1, -2}}, {{0, 1}, {1, 2}, {0, 2}}));
    CHECK_FALSE(r.smooth);
    CHECK(r.complete);
  }
  SECTION("a cone containing a line") {
    const auto r = validate(Fan(1, {{1}, {-1}}, {{0, 1}}));
    CHECK_FALSE(r.strongly_convex);
    CHECK_FALSE(r.all());
  }
  SECTION("overlapping cones") {
    const auto r = validate(Fan(2, {{1, 0}, {0, 1}, {1, 1}, {-1, 0}}, {{0, 1}, {2, 3}}));
    CHECK_FALSE(r.pairwise_faces);
  }
  SECTION("overlap in dimension 3") {
    const auto r = validate(Fan(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}, {-1, 0, 0}, {0, -1, 0}},
                                {{0, 1, 2}, {3, 4, 5}}));
    CHECK_FALSE(r.pairwise_faces);
  }
  SECTION("an overlapping factor spoils a product") {
    const Fan f(3, {{1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {-1, 0, 0}, {0, 0, 1}, {0, 0, -1}},
                {{0, 1, 4}, {0, 1, 5}, {2, 3, 4}, {2, 3, 5}});
    CHECK_FALSE(validate(f).pairwise_faces);
  }
  SECTION("too few rays for a maximal cone") {
    const auto r = validate(Fan(2, {{1, 0}, {0, 1}}, {{0}, {1}}));
    CHECK_FALSE(r.smooth);
    CHECK_FALSE(r.complete);
  }
}

TEST_CASE("fan construction normalizes and rejects bad structure") {
  const Fan f(2, {{2, 0}, {0, 3}, {-1, -1}}, {{1, 0}, {2, 1}, {2, 0}, {0, 1}});
  CHECK(f.rays()[0] == LatticeVector{1, 0});
  CHECK(f.rays()[1] == LatticeVector{0, 1});
  CHECK(f.maximal_cones().size() == 3);
  CHECK(f.same_as(projective_fan(2)));

  const Fan merged(1, {{1}, {3}, {-1}}, {{0}, {1}, {2}});
  CHECK(merged.rays().size() == 2);
  CHECK(merged.same_as(cp1()));

  CHECK_THROWS_AS(Fan(2, {{0, 0}, {1, 0}}, {{0, 1}}), StructuralError);
  CHECK_THROWS_AS(Fan(2, {{1, 0}, {0, 1}}, {{0, 2}}), StructuralError);
  CHECK_THROWS_AS(Fan(2, {{1, 0}, {0, 1}, {1, 1}}, {{0, 1}}), StructuralError);
  CHECK_THROWS_AS(Fan(2, {{1, 0}, {0, 1}}, {{0, 1}, {0}}), StructuralError);
  CHECK_THROWS_AS(Fan(2, {{1, 0}, {0, 1}}, {}), StructuralError);
  CHECK_THROWS_AS(Fan(2, {{1, 0}, {0, 1}}, {Cone{}}), StructuralError);
  CHECK_THROWS_AS(Fan(0, {}, {{0}}), DimensionError);
  CHECK_THROWS_AS(Fan(9, {}, {{0}}), DimensionError);
  CHECK_THROWS_AS(Fan(2, {{1, 0, 0}}, {{0}}), DimensionError);
  CHECK_THROWS_AS(Fan(1, {{2'000'000}, {-1}}, {{0}, {1}}), DomainError);
}

TEST_CASE("product") {
  const auto f0 = product(cp1(), cp1());
  CHECK(f0.same_as(hirzebruch(0)));
  CHECK(f0.rays().size() == 4);
  CHECK(f0.maximal_cones().size() == 4);

  const auto f = product(cp1(), projective_fan(2));
  CHECK(f.dim() == 3);
  CHECK(f.rays().size() == 5);
  CHECK(f.maximal_cones().size() == 6);
  CHECK(validate(f).all());

  const auto a = hirzebruch(2), b = projective_fan(2), c = cp1();
  const auto left = product(product(a, b), c), right = product(a, product(b, c));
  CHECK(left.maximal_cones().size() == right.maximal_cones().size());
  CHECK(left.same_as(right));

  const Fan broken(2, {{1, 0}, {0, 1}, {-1, -2}}, {{0, 1}, {1, 2}, {0, 2}});
  CHECK_THROWS_AS(product(broken, cp1()), PreconditionError);
  CHECK_THROWS_AS(product(projective_fan(4), projective_fan(5)), DimensionError);
}

TEST_CASE("transform and blow-up") {
  const auto f = hirzebruch(1);
  CHECK_THROWS_AS(transform(f, IntegerMatrix{{2, 0}, {0, 1}}), DomainError);
  const IntegerMatrix u{{2, 1}, {1, 1}};
  const auto g = transform(f, u);
  CHECK(validate(g).all());
  CHECK(transform(g, inverse_unimodular(u)).same_as(f));

  const auto p2 = projective_fan(2);
  const auto bl = blowup_at_cone(p2, p2.maximal_cones()[1]);
  CHECK(bl.rays().size() == 4);
  CHECK(validate(bl).all());
  CHECK(isomorphic(bl, hirzebruch(1)).has_value());
  CHECK_THROWS_AS(blowup_at_cone(p2, Cone{0}), PreconditionError);
}

TEST_CASE("factorize: Hirzebruch surfaces") {
  const auto f0 = factorize(hirzebruch(0));
  REQUIRE(f0.blocks.size() == 2);
  for (const auto& b : f0.blocks) CHECK(b.factor.same_as(cp1()));
  check_factorization(hirzebruch(0), f0);
  for (std::int64_t a : {1, 2, 3, -2, 7}) {
    const auto r = factorize(hirzebruch(a));
    CHECK(r.blocks.size() == 1);
    check_factorization(hirzebruch(a), r);
  }
  CHECK(factorize(projective_fan(3)).blocks.size() == 1);
  CHECK(factorize(two_point_blowup_of_cp2()).blocks.size() == 1);
}

TEST_CASE("factorize: scrambled product of CP2 and two lines") {
  Rng rng(21);
  const auto whole = product(product(projective_fan(2), cp1()), cp1());
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = transform(whole, testing::random_unimodular(rng, 4, 5));
    const auto r = factorize(f);
    check_factorization(f, r);
    std::vector<Fan> blocks;
    for (const auto& b : r.blocks) blocks.push_back(b.factor);
    REQUIRE(testing::same_fans_up_to_isomorphism(blocks, {projective_fan(2), cp1(), cp1()}));
    REQUIRE(testing::same_fans_up_to_isomorphism(testing::partition_oracle(f), blocks));
  }
}

TEST_CASE("factorize: agrees with the partition oracle") {
  Rng rng(22);
  const auto& names = testing::basic_fan_names();
  for (int trial = 0; trial < 60; ++trial) {
    Fan f = testing::basic_fan(names[static_cast<std::size_t>(testing::uniform(rng, 0, 4))]);
    while (f.dim() < 3) f = product(f, testing::basic_fan(names[static_cast<std::size_t>(testing::uniform(rng, 0, 4))]));
    if (f.dim() > 4) continue;
    f = transform(f, testing::random_unimodular(rng, static_cast<std::size_t>(f.dim()), 5));
    const auto r = factorize(f);
    check_factorization(f, r);
    std::vector<Fan> blocks;
    for (const auto& b : r.blocks) blocks.push_back(b.factor);
    REQUIRE(testing::same_fans_up_to_isomorphism(testing::partition_oracle(f), blocks));
  }
}

TEST_CASE("factorize: output is deterministic") {
  const auto f = transform(product(hirzebruch(1), cp1()), IntegerMatrix{{1, 2, 0}, {0, 1, 1}, {0, 0, 1}});
  const auto a = factorize(f), b = factorize(f);
  CHECK(a.change_of_basis == b.change_of_basis);
  REQUIRE(a.blocks.size() == b.blocks.size());
  for (std::size_t i = 0; i < a.blocks.size(); ++i) CHECK(a.blocks[i].factor == b.blocks[i].factor);
}

TEST_CASE("factorize rejects fans that are not smooth and complete") {
  const Fan incomplete(2, {{1, 0}, {0, 1}, {-1, 2}, {0, -1}}, {{0, 1}, {1, 2}, {2, 3}});
  CHECK_THROWS_AS(factorize(incomplete), PreconditionError);
  const Fan singular(2, {{1, 0}, {0, 1}, {-1, -2}}, {{0, 1}, {1, 2}, {0, 2}});
  CHECK_THROWS_AS(factorize(singular), PreconditionError);
}

TEST_CASE("isomorphic: examples") {
  const auto f2 = hirzebruch(2);
  const auto self = isomorphic(f2, f2);
  REQUIRE(self.has_value());
  CHECK(is_isomorphism(*self, f2, f2));
  CHECK_FALSE(isomorphic(hirzebruch(2), hirzebruch(0)).has_value());
  CHECK_FALSE(isomorphic(hirzebruch(1), hirzebruch(3)).has_value());
  CHECK(isomorphic(hirzebruch(2), hirzebruch(-2)).has_value());
  CHECK(isomorphic(hirzebruch(1), hirzebruch(-1)).has_value());
  CHECK_FALSE(isomorphic(projective_fan(2), product(cp1(), cp1())).has_value());
  CHECK_FALSE(isomorphic(projective_fan(2), projective_fan(3)).has_value());

  const auto f0 = hirzebruch(0);
  const auto blown = blowup_at_cone(f0, f0.maximal_cones()[2]);
  const auto cert = isomorphic(blown, two_point_blowup_of_cp2());
  REQUIRE(cert.has_value());
  CHECK(is_isomorphism(*cert, blown, two_point_blowup_of_cp2()));
  CHECK(is_unimodular(*cert));
}

TEST_CASE("isomorphic is an equivalence relation on a corpus") {
  Rng rng(23);
  std::vector<Fan> corpus;
  for (std::int64_t a = 0; a <= 3; ++a) {
    corpus.push_back(hirzebruch(a));
    corpus.push_back(transform(hirzebruch(a), testing::random_unimodular(rng, 2, 5)));
  }
  corpus.push_back(projective_fan(2));
  corpus.push_back(transform(projective_fan(2), testing::random_unimodular(rng, 2, 5)));
  corpus.push_back(two_point_blowup_of_cp2());
  corpus.push_back(blowup_at_cone(hirzebruch(0), hirzebruch(0).maximal_cones()[0]));

  for (const auto& a : corpus) {
    const auto id = isomorphic(a, a);
    REQUIRE(id.has_value());
    for (const auto& b : corpus) {
      const auto ab = isomorphic(a, b);
      const auto ba = isomorphic(b, a);
      REQUIRE(ab.has_value() == ba.has_value());
      if (!ab) continue;
      REQUIRE(is_isomorphism(inverse_unimodular(*ab), b, a));
      for (const auto& c : corpus) {
        const auto bc = isomorphic(b, c);
        if (!bc) continue;
        const auto ac = isomorphic(a, c);
        REQUIRE(ac.has_value());
        REQUIRE(is_isomorphism(*bc * *ab, a, c));
      }
    }
  }
}

TEST_CASE("isomorphic: dimension mismatch is not an error") {
  CHECK_FALSE(isomorphic(cp1(), projective_fan(2)).has_value());
  const Fan singular(2, {{1, 0}, {0, 1}, {-1, -2}}, {{0, 1}, {1, 2}, {0, 2}});
  CHECK_THROWS_AS(isomorphic(singular, projective_fan(2)), PreconditionError);
}
