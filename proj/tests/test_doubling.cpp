#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "sz/doubling.hpp"

using namespace sz;

namespace {

QVec v(std::initializer_list<long> xs) {
  QVec r;
  for (long x : xs) r.push_back(Q(x));
  return r;
}

// dim(l cap V+) by brute force: count the dimension of the kernel of the
// projection of l onto the V- block.
int kappa_oracle(const SymplecticSpace& sp, const QMat& basis) {
  int d = sp.d();
  QMat minus;
  for (const auto& r : basis) minus.push_back(QVec(r.begin() + d, r.end()));
  return d - rank(minus, d);
}

struct Sample {
  Lagrangian l;
  int expected = -1;  // known kappa, or -1
};

Sample random_lagrangian(const SymplecticSpace& sp, std::mt19937_64& rng) {
  Sample s;
  int j = static_cast<int>(rng() % (sp.m + 1));
  Lagrangian base = kappa_lagrangian(sp, j);
  QMat g = block_diag(random_symplectic(sp.gram, rng), random_symplectic(sp.gram, rng));
  s.l.basis = mat_mul(base.basis, g);
  s.expected = j;
  if (rng() % 2) {
    // a few transvections of the doubled space move kappa
    s.l.basis = mat_mul(s.l.basis, random_symplectic(sp.gram_box, rng, 1 + rng() % 2));
    s.expected = -1;
  }
  return s;
}

}  // namespace

TEST_CASE("symplectic space and elementary matrices") {
  std::mt19937_64 rng(3);
  for (int d : {2, 4, 6}) {
    SymplecticSpace sp = SymplecticSpace::standard(d);
    CHECK(sp.gram[0][d - 1] == 1);
    CHECK(sp.gram[d - 1][0] == -1);
    for (int t = 0; t < 5; ++t) {
      QMat g = random_symplectic(sp.gram, rng);
      CHECK(mat_mul(mat_mul(g, sp.gram), transpose(g, d)) == sp.gram);
      QMat h = random_symplectic(sp.gram_box, rng);
      CHECK(mat_mul(mat_mul(h, sp.gram_box), transpose(h, 2 * d)) == sp.gram_box);
    }
  }
  CHECK_THROWS(SymplecticSpace::standard(3));
}

TEST_CASE("kappa examples") {
  for (int d : {2, 4, 6}) {
    SymplecticSpace sp = SymplecticSpace::standard(d);
    CHECK(kappa(sp, diagonal_lagrangian(sp)) == 0);
    for (int j = 0; j <= sp.m; ++j) CHECK(kappa(sp, kappa_lagrangian(sp, j)) == j);
    // V+ is not lagrangian; its intersection with V+ is everything
    CHECK(intersection_dim(sp, side_basis(sp, Side::Plus), Side::Plus) == d);
    CHECK_THROWS_AS(kappa(sp, Lagrangian{side_basis(sp, Side::Plus)}), std::invalid_argument);
  }
  // the dim V = 4 instance (Fv, 0) + (0, Fw) + V_1^diag
  SymplecticSpace sp = SymplecticSpace::standard(4);
  Lagrangian l{{v({1, 0, 0, 0, 0, 0, 0, 0}), v({0, 0, 0, 0, 0, 0, 0, 1}), v({0, 1, 0, 0, 0, 1, 0, 0}),
                v({0, 0, 1, 0, 0, 0, 1, 0})}};
  CHECK(kappa(sp, l) == 1);
}

TEST_CASE("kappa+ = kappa- and f+ vanishing on random lagrangians") {
  std::mt19937_64 rng(17);
  int positive = 0, zero = 0;
  for (int i = 0; i < 120; ++i) {
    int d = 2 * (1 + i % 3);
    SymplecticSpace sp = SymplecticSpace::standard(d);
    Sample s = random_lagrangian(sp, rng);
    REQUIRE(is_lagrangian(sp, s.l.basis));
    int kp = intersection_dim(sp, s.l.basis, Side::Plus);
    int km = intersection_dim(sp, s.l.basis, Side::Minus);
    CHECK(kp == km);
    CHECK(kp == kappa_oracle(sp, s.l.basis));
    if (s.expected >= 0) CHECK(kp == s.expected);
    WedgeVector w = plucker(s.l.basis);
    CHECK((f_plus(sp, w, Side::Plus) == 0) == (kp > 0));
    CHECK((f_plus(sp, w, Side::Minus) == 0) == (kp > 0));
    (kp > 0 ? positive : zero)++;
  }
  CHECK(positive > 10);
  CHECK(zero > 10);
}

TEST_CASE("Pluecker vectors") {
  std::mt19937_64 rng(5);
  SymplecticSpace sp = SymplecticSpace::standard(4);
  Lagrangian diag = diagonal_lagrangian(sp);
  WedgeVector w = plucker(diag.basis);
  CHECK(f_plus(sp, w) != 0);
  CHECK(f_plus(sp, plucker(side_basis(sp, Side::Plus))) == 0);
  CHECK(proportional(plucker(diag.basis, 2), w));
  CHECK(plucker(diag.basis, 2).coords.begin()->second == 2 * w.coords.begin()->second);
  // row operations: output changes by det of the change of basis
  for (int t = 0; t < 10; ++t) {
    QMat a(4, QVec(4, 0));
    for (auto& r : a)
      for (auto& x : r) x = static_cast<long>(rng() % 5) - 2;
    Q da = det(a);
    if (da == 0) continue;
    WedgeVector w2 = plucker(mat_mul(a, diag.basis));
    CHECK(proportional(w, w2));
    CHECK(w2.coords.begin()->second == da * w.at(w2.coords.begin()->first));
  }
  CHECK_THROWS(plucker({v({1, 0, 0, 0}), v({2, 0, 0, 0})}));
  // decomposable vectors have contraction rank N - k
  CHECK(contraction_rank(w) == 8 - 4);
  WedgeVector sum = w;
  for (const auto& [i, x] : plucker(side_basis(sp, Side::Plus)).coords) sum.coords[i] += x;
  CHECK(contraction_rank(sum) > 8 - 4);
}

TEST_CASE("exterior power action") {
  std::mt19937_64 rng(9);
  for (int d : {2, 4}) {
    SymplecticSpace sp = SymplecticSpace::standard(d);
    for (int t = 0; t < 4; ++t) {
      Sample s = random_lagrangian(sp, rng);
      WedgeVector w = plucker(s.l.basis);
      QMat g = random_symplectic(sp.gram_box, rng, 3), h = random_symplectic(sp.gram_box, rng, 3);
      CHECK(exterior_action(w, mat_mul(g, h)).coords ==
            exterior_action(exterior_action(w, g), h).coords);
      CHECK(exterior_action(w, g).coords == plucker(mat_mul(s.l.basis, g)).coords);
    }
  }
}

TEST_CASE("f+ eigencharacter under the monoid action") {
  std::mt19937_64 rng(21);
  static const Q ts[] = {Q(2), Q(-3), Q(1, 5), Q(7, 2)};
  for (int i = 0; i < 20; ++i) {
    int d = 2 * (1 + i % 2);
    SymplecticSpace sp = SymplecticSpace::standard(d);
    WedgeVector w = plucker(random_lagrangian(sp, rng).l.basis);
    Q t = ts[rng() % 4];
    QMat g = block_diag(random_symplectic(sp.gram, rng), random_symplectic(sp.gram, rng));
    WedgeVector acted = scaled(exterior_action(w, g), t);
    CHECK(f_plus(sp, acted) == t * f_plus(sp, w));
    CHECK(f_plus(sp, acted, Side::Minus) == t * f_plus(sp, w, Side::Minus));
  }
}

TEST_CASE("boundary curve") {
  for (int d : {2, 4, 6}) {
    BoundaryCurve c = boundary_curve(d);
    CHECK(c.fplus.order() == 1);
    CHECK(c.fplus.degree() == 1);
    CHECK(c.fplus_at_one != 0);
    CHECK(c.limit_kappa == 1);
    CHECK(c.limit_matches);
    CHECK(f_plus(SymplecticSpace::standard(d), c.limit) == 0);
  }
  CHECK(boundary_curve(2).fplus.to_string() == "t");
}

TEST_CASE("doubling colored cone") {
  ColoredCone c1 = doubling_cone(1);
  CHECK(c1.cone == Cone::from_generators(2, {v({0, 1}), v({1, -1})}));
  ColoredCone c2 = doubling_cone(2);
  CHECK(c2.cone == Cone::from_generators(3, {v({0, 1, -1}), v({0, 0, 1}), v({1, -1, 0})}));
  for (int n = 1; n <= 4; ++n) {
    ColoredCone cc = doubling_cone(n);
    ValidationReport r = validate_colored_cone(cc);
    CHECK(r.valid);
    QVec ray = zero_vec(n + 1);
    ray[0] = 1;
    ray[1] = -1;
    CHECK(cc.datum.valuation_cone.contains(ray));
    CHECK(cc.colors.size() == static_cast<size_t>(n));
    CHECK(lambda_monoid_check(doubling_eigen_lattice(n), cc).ok());
    // C cap V is colorless in V but the colored cone keeps every color
    CHECK(cc.colors.size() == cc.datum.colors.size());
  }
}

TEST_CASE("L-monoid comparison") {
  LMonoidReport r1 = lmonoid_verify(1);
  CHECK(r1.equal);
  CHECK(r1.orbit_hull == Cone::from_generators(2, {v({1, 1}), v({1, -1})}));
  for (int n = 1; n <= 3; ++n) {
    LMonoidReport r = lmonoid_verify(n);
    CHECK_MESSAGE(r.equal, r.detail);
    CHECK(r.orbit.size() == static_cast<size_t>(2 * n));
  }
}

TEST_CASE("Siegel parabolic datum") {
  SphericalDatum d = xp_data(Family::C, 1);
  CHECK(d.q_dim == 1);
  CHECK(d.valuation_cone == Cone::full(1));
  CHECK(d.colors.size() == 1);
  ColoredCone a = xp_affine_closure(Family::C, 1);
  CHECK(validate_colored_cone(a).valid);
  Classification cl = classify_embedding(a);
  CHECK(cl.affine.affine);
  CHECK(cl.quasiaffine);
  CHECK(a.colors.size() == d.colors.size());
  CHECK_THROWS_AS(xp_data(Family::A, 1), std::invalid_argument);
}
