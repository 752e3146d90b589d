#include "test_main.hpp"

#include <random>

#include "sz/convex.hpp"

using namespace sz;

namespace {

QVec v(std::initializer_list<long> xs) {
  QVec r;
  for (long x : xs) r.push_back(Q(x));
  return r;
}

// Extremality oracle: a generator is extremal iff dropping it shrinks the cone,
// i.e. it is not a nonnegative combination of the others (checked via DD on the rest).
bool extremal_in(const QMat& gens, size_t i, int dim) {
  QMat rest;
  for (size_t j = 0; j < gens.size(); ++j)
    if (j != i) rest.push_back(gens[j]);
  return !Cone::from_generators(dim, rest).contains(gens[i]);
}

QMat random_gens(std::mt19937& rng, int dim, int count, int bound = 3) {
  std::uniform_int_distribution<int> d(-bound, bound);
  QMat g(count, QVec(dim));
  for (auto& r : g)
    for (auto& x : r) x = d(rng);
  return g;
}

// A pointed cone: random vectors in the open halfspace x_0 > 0.
QMat random_pointed(std::mt19937& rng, int dim, int count) {
  QMat g = random_gens(rng, dim, count);
  for (auto& r : g) r[0] = abs(r[0]) + 1;
  return g;
}

}  // namespace

TEST_CASE("make_cone examples") {
  Cone q = Cone::from_generators(2, {v({1, 0}), v({0, 1})});
  CHECK(q.rays() == QMat{v({0, 1}), v({1, 0})});
  CHECK(q.halfspaces() == QMat{v({0, 1}), v({1, 0})});

  QMat g{v({1, 1}), v({1, -1}), v({1, 0})};
  Cone c = Cone::from_generators(2, g);
  CHECK(c.rays() == QMat{v({1, -1}), v({1, 1})});
  CHECK_FALSE(extremal_in(g, 2, 2));
  CHECK(extremal_in(g, 0, 2));

  Cone h = Cone::from_inequalities(2, {v({-1, 1})});
  CHECK(h.halfspaces() == QMat{v({-1, 1})});
  CHECK(h.lineality() == QMat{v({1, 1})});
  CHECK(Cone::from_inequalities(2, h.halfspaces()) == h);
  CHECK(Cone::from_generators(2, h.rays()) == h);

  CHECK(Cone::from_generators(3, {}).is_zero());
  CHECK_THROWS_AS(Cone::from_generators(2, {v({1, 0, 0})}), std::invalid_argument);
}

TEST_CASE("dual cone") {
  Cone q = Cone::from_generators(2, {v({1, 0}), v({0, 1})});
  CHECK(dual_cone(q) == q);
  CHECK(dual_cone(Cone::full(2)) == Cone::zero(2));
  Cone c = Cone::from_generators(2, {v({1, 1}), v({1, -1})});
  Cone d = dual_cone(c);
  CHECK(d.rays() == QMat{v({1, -1}), v({1, 1})});
  for (auto& phi : d.rays())
    for (auto& r : c.rays()) CHECK(dot(phi, r) >= 0);
}

TEST_CASE("faces") {
  Cone q = Cone::from_generators(2, {v({1, 0}), v({0, 1})});
  auto fq = faces(q);
  CHECK(fq.size() == 4);
  CHECK(fq.front().is_zero());
  CHECK(fq.back() == q);
  Cone s = Cone::from_generators(3, {v({1, 0, 0}), v({1, 1, 0}), v({1, 1, 1})});
  CHECK(faces(s).size() == 8);
  CHECK(faces(Cone::zero(2)).size() == 1);
  Cone half = Cone::from_inequalities(2, {v({1, 0})});
  CHECK(faces(half).size() == 2);
}

TEST_CASE("membership") {
  Cone q = Cone::from_generators(2, {v({1, 0}), v({0, 1})});
  CHECK(q.in_relint(v({1, 1})));
  CHECK_FALSE(q.in_relint(v({1, 0})));
  CHECK(q.contains(v({1, 0})));
  Cone c = Cone::from_generators(2, {v({1, 1}), v({1, -1})});
  CHECK(c.in_relint(v({1, 0})));
  CHECK_THROWS(q.contains(v({1})));
}

TEST_CASE("intersections") {
  Cone q = Cone::from_generators(2, {v({1, 0}), v({0, 1})});
  Cone half = Cone::from_inequalities(2, {v({-1, 1})});
  CHECK(intersect(q, q) == q);
  CHECK(intersect(q, half) == Cone::from_generators(2, {v({0, 1}), v({1, 1})}));
  Cone cx = Cone::from_generators(2, {v({1, -1}), v({0, 1})});
  CHECK(intersect(cx, half) == Cone::from_generators(2, {v({0, 1}), v({1, 1})}));
}

TEST_CASE("polyhedra: sums and faces") {
  Polyhedron pt = Polyhedron::from_generators(2, {v({0, 0})});
  Cone fmax = Cone::from_generators(2, {v({-1, 1}), v({0, 1})});
  Polyhedron e = minkowski_sum(pt, fmax);
  CHECK(e.recession_cone() == fmax);
  CHECK(minkowski_sum(e, Cone::zero(2)) == e);

  Polyhedron seg = Polyhedron::from_generators(2, {v({0, 0}), v({1, 0})});
  Polyhedron strip = minkowski_sum(seg, Cone::from_generators(2, {v({0, 1})}));
  CHECK(strip == Polyhedron::from_constraints(
                     2, {{v({1, 0}), 0}, {v({-1, 0}), 1}, {v({0, 1}), 0}}));

  Polyhedron q = Polyhedron::from_cone(Cone::from_generators(2, {v({1, 0}), v({0, 1})}));
  Polyhedron ray = Polyhedron::from_cone(Cone::from_generators(2, {v({1, 0})}));
  CHECK(unique_face_of(q, q) == q);
  CHECK(unique_face_of(Polyhedron::from_generators(2, {v({0, 0})}), q) ==
        Polyhedron::from_generators(2, {v({0, 0})}));
  CHECK(unique_face_of(ray, q) == ray);
  CHECK(unique_face_of(Polyhedron::from_generators(2, {v({2, 0})}), q) == ray);
  CHECK_THROWS(unique_face_of(Polyhedron::from_generators(2, {v({-1, 0})}), q));
}

TEST_CASE("recession and bottom") {
  Polyhedron box = Polyhedron::from_generators(2, {v({0, 0}), v({1, 0}), v({0, 1}), v({1, 1})});
  auto rb = recession_and_bottom(box);
  CHECK(rb.recession.is_zero());
  REQUIRE(rb.bottom.size() == 1);
  CHECK(rb.bottom[0] == box);

  Polyhedron e = Polyhedron::from_constraints(2, {{v({1, 0}), -1}, {v({0, 1}), 0}});
  rb = recession_and_bottom(e);
  CHECK(rb.recession == Cone::from_generators(2, {v({1, 0}), v({0, 1})}));
  REQUIRE(rb.bottom.size() == 1);
  CHECK(rb.bottom[0].vertices() == QMat{v({1, 0})});

  Polyhedron fig = minkowski_sum(Polyhedron::from_generators(2, {v({0, 0})}),
                                 Cone::from_generators(2, {v({-1, 1}), v({0, 1})}));
  rb = recession_and_bottom(fig);
  CHECK(rb.bottom.size() == 1);
  CHECK(rb.bottom[0].vertices() == QMat{v({0, 0})});

  CHECK_THROWS_AS(recession_and_bottom(Polyhedron::from_constraints(2, {{v({1, 0}), 0}})),
                  std::domain_error);
}

TEST_CASE("double description round trips") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> dd(1, 5), nn(0, 8);
  for (int it = 0; it < 60; ++it) {
    int dim = dd(rng);
    QMat g = random_gens(rng, dim, nn(rng));
    Cone c = Cone::from_generators(dim, g);
    CHECK(Cone::from_inequalities(dim, c.halfspaces()) == c);
    CHECK(Cone::from_generators(dim, c.rays()) == c);
    CHECK(dual_cone(dual_cone(c)) == c);
    for (auto& r : g) CHECK(c.contains(r));
    for (size_t i = 0; i < c.proper_rays().size(); ++i)
      CHECK(extremal_in(c.proper_rays(), i, dim));
  }
}

TEST_CASE("face lattice properties") {
  std::mt19937 rng(5);
  for (int it = 0; it < 15; ++it) {
    int dim = 2 + it % 3;
    Cone c = Cone::from_generators(dim, random_pointed(rng, dim, dim + it % 3));
    auto fs = faces(c);
    for (size_t i = 0; i < fs.size(); ++i)
      for (size_t j = i + 1; j < fs.size(); ++j) {
        Cone m = intersect(fs[i], fs[j]);
        CHECK(std::find(fs.begin(), fs.end(), m) != fs.end());
      }
    if (static_cast<int>(c.proper_rays().size()) == c.cone_dim())
      CHECK(fs.size() == (size_t(1) << c.proper_rays().size()));
  }
}

TEST_CASE("E = B + F on random polyhedra") {
  std::mt19937 rng(9);
  for (int it = 0; it < 20; ++it) {
    int dim = 2 + it % 2;
    Polyhedron pts = Polyhedron::from_generators(dim, random_gens(rng, dim, 4));
    Cone f = Cone::from_generators(dim, random_pointed(rng, dim, 2 + it % 2));
    Polyhedron e = minkowski_sum(pts, f);
    auto rb = recession_and_bottom(e);
    CHECK(rb.recession == f);
    QMat bv;
    for (auto& b : rb.bottom) {
      CHECK(b.is_bounded());
      for (auto& x : b.vertices()) bv.push_back(x);
    }
    CHECK(minkowski_sum(Polyhedron::from_generators(dim, bv), rb.recession) == e);
  }
}

TEST_CASE("deep translates") {
  Cone quad = Cone::from_generators(2, {v({1, 0}), v({0, 1})});
  std::vector<Polyhedron> b{Polyhedron::from_generators(2, {v({0, 0})})};
  ThresholdOracle th(3, {v({1, 0}), v({0, 1})});
  CHECK(find_deep_translate(b, quad, th) == v({4, 4}));
  CHECK(find_deep_translate(b, Cone::zero(2), th) == v({0, 0}));
  AlwaysDeep yes;
  CHECK(find_deep_translate(b, quad, yes) == v({1, 1}));

  struct Never : DeepOracle {
    bool deep(const std::vector<Polyhedron>&, const Cone& f) const override { return f.is_zero(); }
  } never;
  CHECK_THROWS_AS(find_deep_translate(b, quad, never, 5), std::runtime_error);
}

TEST_CASE("cellular decomposition of the planar example") {
  Cone fmax = Cone::from_generators(2, {v({-1, 1}), v({0, 1})});
  Polyhedron e = minkowski_sum(Polyhedron::from_generators(2, {v({0, 0})}), fmax);
  ThresholdOracle th(3, fmax.facets());
  auto cells = cellular_decompose(e, th);
  REQUIRE(cells.size() == 4);
  // dot + F^max
  CHECK(cells[0].direction == fmax);
  REQUIRE(cells[0].base.size() == 1);
  CHECK(cells[0].base[0].vertices() == QMat{v({-4, 8})});
  // two segments with rays
  std::vector<QMat> segs;
  for (int i = 1; i <= 2; ++i) {
    CHECK(cells[i].direction.cone_dim() == 1);
    REQUIRE(cells[i].base.size() == 1);
    CHECK(cells[i].base[0].affine_dim() == 1);
    segs.push_back(cells[i].base[0].vertices());
  }
  std::sort(segs.begin(), segs.end());
  CHECK(segs[0] == QMat{v({-4, 4}), v({-4, 8})});
  CHECK(segs[1] == QMat{v({-4, 8}), v({0, 4})});
  // bounded cell
  CHECK(cells[3].direction.is_zero());
  REQUIRE(cells[3].base.size() == 1);
  CHECK(cells[3].base[0].vertices() == QMat{v({-4, 4}), v({-4, 8}), v({0, 0}), v({0, 4})});
}

TEST_CASE("cellular decomposition of a bounded polyhedron") {
  Polyhedron box = Polyhedron::from_generators(2, {v({0, 0}), v({1, 0}), v({0, 1})});
  auto cells = cellular_decompose(box, ThresholdOracle(100));
  REQUIRE(cells.size() == 1);
  CHECK(cells[0].direction.is_zero());
  CHECK(cells[0].sum[0] == box);
}

#include "convex_cert.hpp"

TEST_CASE("cellular decomposition certificates on random input") {
  std::mt19937 rng(21);
  for (int it = 0; it < 12; ++it) {
    int dim = 2 + it % 3;
    Cone f = Cone::from_generators(dim, cert::random_pointed(rng, dim, dim));
    Polyhedron e = minkowski_sum(Polyhedron::from_generators(dim, cert::random_gens(rng, dim, 1 + it % 2)), f);
    ThresholdOracle th(1 + it % 4, f.facets());
    auto cells = cellular_decompose(e, th);
    CHECK(cert::check_cells(e, cells, rng, 40) == "");
    for (auto& c : cells) CHECK(th.deep(c.base, c.direction));
  }
}

TEST_CASE("cell certificate rejects bad subdivisions") {
  auto rect = [](long x0, long x1, long y0, long y1) {
    return Polyhedron::from_generators(2, {v({x0, y0}), v({x1, y0}), v({x0, y1}), v({x1, y1})});
  };
  auto as_cells = [](std::vector<Polyhedron> ps) {
    return std::vector<Cell>{Cell{ps, Cone::zero(2), ps}};
  };
  Polyhedron sq = rect(0, 4, 0, 4);
  std::mt19937 rng(3);
  CHECK(cert::check_cells(sq, as_cells({rect(0, 2, 0, 4), rect(2, 4, 0, 4)}), rng, 20) == "");
  CHECK(cert::check_cells(sq, as_cells({rect(0, 2, 0, 2), rect(2, 4, 0, 2), rect(0, 2, 2, 4), rect(2, 4, 2, 4)}),
                          rng, 20) == "");
  // hanging vertex: the left piece meets the lower right piece in half of an edge
  CHECK(cert::check_cells(sq, as_cells({rect(0, 2, 0, 4), rect(2, 4, 0, 2), rect(2, 4, 2, 4)}), rng, 20) ==
        "cells do not meet in a common face");
  CHECK(cert::check_cells(sq, as_cells({rect(0, 3, 0, 4), rect(2, 4, 0, 4)}), rng, 20) ==
        "cells do not meet in a common face");
  CHECK(cert::check_cells(sq, as_cells({rect(0, 2, 0, 4)}), rng, 50).rfind("uncovered", 0) == 0);
}
