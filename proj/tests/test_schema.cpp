#include "test_main.hpp"

#include <random>

#include "convex_cert.hpp"
#include "sz/schema.hpp"

using namespace sz;

namespace {

QVec v(std::initializer_list<long> xs) {
  QVec r;
  for (long x : xs) r.push_back(Q(x));
  return r;
}

// Serialize, reparse, serialize again: both dumps must agree byte for byte.
template <class T, class To, class From>
void round_trip(const T& x, To to, From from) {
  std::string a = to(x).dump();
  std::string b = to(from(parse_document(a))).dump();
  CHECK(a == b);
}

}  // namespace

TEST_CASE("rationals and matrices") {
  CHECK(rational_json(Q(-3, 4)) == "-3/4");
  CHECK(rational_from(Json("6/8")) == Q(3, 4));
  CHECK(rational_from(Json(5)) == 5);
  CHECK_THROWS_AS(rational_from(Json("1/0")), SchemaError);
  CHECK_THROWS_AS(rational_from(Json(0.5)), SchemaError);
  CHECK_THROWS_AS(vec_from(Json::parse(R"(["1","2"])"), 3), SchemaError);
  CHECK_THROWS_AS(mat_from(Json::parse(R"([["1"],["1","2"]])")), SchemaError);
}

TEST_CASE("cone documents") {
  std::mt19937 rng(4);
  for (int i = 0; i < 30; ++i) {
    int dim = 1 + i % 4;
    Cone c = Cone::from_generators(dim, cert::random_gens(rng, dim, 1 + i % 5));
    round_trip(c, cone_json, cone_from);
    CHECK(cone_from(cone_json(c)) == c);
  }
  Json h = Json::parse(R"({"dim": 2, "inequalities": [["1","0"],["0","1"]]})");
  CHECK(cone_from(h) == Cone::from_generators(2, {v({1, 0}), v({0, 1})}));
  Json bad = cone_json(Cone::full(2));
  bad["facets"] = Json::parse(R"([["1","0"]])");
  CHECK_THROWS_AS(cone_from(bad), SchemaError);
  CHECK_THROWS_AS(cone_from(Json::parse(R"({"dim": 2})")), SchemaError);
  CHECK_THROWS_AS(expect_type(cone_json(Cone::full(1)), "embedding"), SchemaError);
  Json wrong = cone_json(Cone::full(1));
  wrong["schema"] = "spherical-zeta/v0";
  CHECK_THROWS_AS(expect_type(wrong, "cone"), SchemaError);
}

TEST_CASE("polyhedron and cell documents") {
  Cone fmax = Cone::from_generators(2, {v({-1, 1}), v({0, 1})});
  Polyhedron e = minkowski_sum(Polyhedron::from_generators(2, {v({0, 0})}), fmax);
  round_trip(e, polyhedron_json, polyhedron_from);
  CHECK(polyhedron_from(polyhedron_json(e)) == e);
  Polyhedron seg = Polyhedron::from_generators(2, {v({0, 0}), v({1, 2})});
  CHECK(polyhedron_from(polyhedron_json(seg)) == seg);
  CHECK(polyhedron_from(polyhedron_json(Polyhedron::empty(3))).is_empty());
  auto cells = cellular_decompose(e, ThresholdOracle(3, fmax.facets()));
  Json j = cells_json(cells);
  REQUIRE(j["cells"].size() == 4);
  CHECK(cone_from(j["cells"][0]["direction"]) == fmax);
}

TEST_CASE("cyclotomic documents") {
  for (Cyclotomic c : {Cyclotomic(Q(2, 3)), Cyclotomic::zeta(5, 1, 2) + Cyclotomic(1), Cyclotomic::sqrt_p(3),
                       Cyclotomic::sqrt_p(5) * Cyclotomic::zeta(5, 2, 7), Cyclotomic::zeta(2, 2, 1)}) {
    long p = c.p() ? c.p() : 5;
    Json j = cyclotomic_json(c, p, c.level());
    CHECK(cyclotomic_from(j) == c);
    CHECK(cyclotomic_json(cyclotomic_from(j), p, c.level()) == j);
  }
  CHECK_THROWS_AS(cyclotomic_from(Json::parse(R"({"p": 5, "M": 1, "coeffs": ["1","1","1","1","1"]})")),
                  SchemaError);
}

TEST_CASE("embedding documents") {
  ColoredCone m = mat2_example();
  round_trip(m, [](const ColoredCone& c) { return embedding_json(c); }, embedding_from);
  ColoredCone back = embedding_from(embedding_json(m));
  CHECK(back.cone == m.cone);
  CHECK(back.colors == m.colors);
  CHECK(validate_colored_cone(back).valid);
  for (int n = 1; n <= 3; ++n) {
    Json j = embedding_json(doubling_cone(n), doubling_eigen_lattice(n));
    auto lambda = eigen_lattice_from(j);
    REQUIRE(lambda);
    CHECK(lambda->chi_map == doubling_eigen_lattice(n).chi_map);
    CHECK(embedding_json(embedding_from(j), lambda).dump() == j.dump());
    CHECK(validate_colored_cone(embedding_from(j)).valid);
  }
  Json bad = embedding_json(m);
  bad["F"] = Json::array({"nope"});
  CHECK_THROWS_AS(embedding_from(bad), SchemaError);
  bad = embedding_json(m);
  bad["colors"].push_back(bad["colors"][0]);
  CHECK_THROWS_AS(embedding_from(bad), SchemaError);
}

TEST_CASE("Schwartz-Bruhat documents") {
  std::mt19937_64 rng(8);
  for (long p : {2, 3, 5}) {
    for (int i = 0; i < 6; ++i) {
      SchwartzBruhat f = random_schwartz_bruhat(p, 1 + i % 2, Q(1, 2), rng);
      round_trip(f, schwartz_bruhat_json, schwartz_bruhat_from);
      CHECK(schwartz_bruhat_from(schwartz_bruhat_json(f)) == f);
    }
  }
  Json j = schwartz_bruhat_json(SchwartzBruhat::basic(3, 1));
  j["terms"][0]["center"] = Json::array({"1/2"});
  CHECK_THROWS_AS(schwartz_bruhat_from(j), SchemaError);
  j = schwartz_bruhat_json(SchwartzBruhat::basic(3, 1));
  j["p"] = 4;
  CHECK_THROWS_AS(schwartz_bruhat_from(j), SchemaError);
}

TEST_CASE("zeta documents") {
  std::vector<ZetaResult> zs{zeta_tate(TameCharacter::trivial(5), SchwartzBruhat::basic(5, 1)),
                             zeta_igusa_det(2, 2), zeta_gj_trivial(2, 3), zeta_gj_gl2_spherical(3)};
  GammaResult g = gamma_tate(TameCharacter::quadratic(3), 4, 2);
  zs.push_back({g.value, "t = q^{-s}", "gamma"});
  for (const auto& z : zs) {
    round_trip(z, zeta_json, zeta_from);
    ZetaResult back = zeta_from(zeta_json(z));
    CHECK(back.value.equals(z.value));
    CHECK(back.value.to_string() == z.value.to_string());
  }
  CHECK(zeta_json(zs[0])["text"] == "1/(1 - t)");
  Json bad = zeta_json(zs[0]);
  bad["denominator"] = Json::array({"0"});
  CHECK_THROWS_AS(zeta_from(bad), SchemaError);
}

TEST_CASE("lagrangian documents") {
  SymplecticSpace sp = SymplecticSpace::standard(4);
  Lagrangian l = kappa_lagrangian(sp, 1);
  auto [sp2, l2] = lagrangian_from(lagrangian_json(sp, l));
  CHECK(sp2.d() == 4);
  CHECK(l2.basis == l.basis);
  Json bad = lagrangian_json(sp, l);
  bad["dim_v"] = 3;
  CHECK_THROWS_AS(lagrangian_from(bad), SchemaError);
}

TEST_CASE("shell tables") {
  CHECK(shells_csv(0, {"1/2", "1/4"}, "k>=2", "1/4") == "k,measure\n0,1/2\n1,1/4\nk>=2,1/4\n");
  CHECK(shells_csv(-1, {"a, b"}, "tail", "0") == "k,measure\n-1,\"a, b\"\ntail,0\n");
}
