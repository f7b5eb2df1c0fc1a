#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "core/polyhedron.hpp"

using namespace accompany;

namespace {

Polyhedron quadrant() {  // x <= 0, y <= 0
  return make_polyhedron({{1.0, 0.0}, {0.0, 1.0}}, {0.0, 0.0});
}

Polyhedron unit_square() {
  return make_polyhedron({{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}},
                         {1.0, 1.0, 1.0, 1.0});
}

}  // namespace

TEST_CASE("make_polyhedron renormalizes to unit normals") {
  Polyhedron p = make_polyhedron({{3.0, 4.0}}, {10.0});
  CHECK(norm(p.halfspaces()[0].normal) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(p.halfspaces()[0].offset == doctest::Approx(2.0).epsilon(1e-14));
  CHECK_THROWS_AS(make_polyhedron({{0.0, 0.0}}, {1.0}), Error);
}

TEST_CASE("containment and inflation") {
  Polyhedron p = quadrant();
  CHECK(contains(p, {-1.0, -1.0}));
  CHECK(contains(p, {0.0, 0.0}));
  CHECK_FALSE(contains(p, {0.1, -1.0}));
  CHECK(contains(inflate(p, 0.2), {0.1, 0.15}));
  CHECK_FALSE(contains(inflate(p, 0.2), {0.25, 0.0}));
}

TEST_CASE("infinite offsets are inert") {
  Polyhedron p = make_polyhedron({{1.0, 0.0}, {0.0, 1.0}}, {0.0, kInfOffset});
  CHECK(contains(p, {-1.0, 100.0}));
  CHECK(distance_to(p, {2.0, 50.0}) == doctest::Approx(2.0).epsilon(1e-12));
  Polyhedron q = inflate(p, 1.0);
  CHECK(q.halfspaces()[1].offset == kInfOffset);
}

TEST_CASE("distance closed forms: single face and slab") {
  Polyhedron h = make_polyhedron({{1.0, 0.0}}, {1.0});
  CHECK(distance_to(h, {3.0, 5.0}) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(distance_to(h, {0.5, -2.0}) == 0.0);

  Polyhedron slab = make_polyhedron({{1.0}, {-1.0}}, {1.0, 1.0});
  CHECK(distance_to(slab, {4.0}) == doctest::Approx(3.0).epsilon(1e-12));

  Polyhedron empty_slab = make_polyhedron({{1.0}, {-1.0}}, {1.0, -2.0});
  CHECK_THROWS_AS(distance_to(empty_slab, {0.0}), Error);
  CHECK_FALSE(is_feasible(empty_slab));
}

TEST_CASE("distance closed form: corner") {
  // oracle: distance from (1, 1) to the negative quadrant is sqrt(2)
  CHECK(distance_to(quadrant(), {1.0, 1.0}) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  // projection onto an edge, not the corner
  CHECK(distance_to(quadrant(), {1.0, -5.0}) == doctest::Approx(1.0).epsilon(1e-12));
  Vec pr = project_onto(quadrant(), {1.0, 1.0});
  CHECK(norm(pr) <= 1e-9);
}

TEST_CASE("dykstra agrees with the corner oracle on redundant face sets") {
  // unit square has 4 faces, so the small-m closed forms do not apply
  Polyhedron p = unit_square();
  CHECK(distance_to(p, {3.0, 3.0}) == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-7));
  CHECK(distance_to(p, {3.0, 0.5}) == doctest::Approx(2.0).epsilon(1e-7));
  CHECK(distance_to(p, {0.2, -0.7}) == 0.0);
}

TEST_CASE("neighborhood vs inflation: the corner separates the two notions") {
  // (r, r) with r = 0.8 lambda: inside P_lambda (each offset misses by 0.8
  // lambda) but outside the Euclidean neighborhood (distance r sqrt(2) > lambda)
  double lambda = 0.5, r = 0.4;
  Polyhedron p = quadrant();
  CHECK(contains(inflate(p, lambda), {r, r}));
  CHECK_FALSE(in_neighborhood(p, {r, r}, lambda));
  // and the neighborhood is always contained in the inflation
  RngStream rng(5, 0);
  for (int i = 0; i < 500; ++i) {
    Vec x{4.0 * rng.uniform() - 2.0, 4.0 * rng.uniform() - 2.0};
    if (in_neighborhood(p, x, lambda)) CHECK(contains(inflate(p, lambda), x));
  }
}

TEST_CASE("half space: the two notions coincide for m = 1") {
  Polyhedron h = make_polyhedron({{0.6, 0.8}}, {0.3});
  RngStream rng(6, 0);
  for (int i = 0; i < 500; ++i) {
    Vec x{6.0 * rng.uniform() - 3.0, 6.0 * rng.uniform() - 3.0};
    for (double lambda : {0.0, 0.1, 1.0})
      CHECK(contains(inflate(h, lambda), x) == in_neighborhood(h, x, lambda));
  }
}

TEST_CASE("vertices of the unit square") {
  auto vs = vertices_2d(unit_square());
  REQUIRE(vs.size() == 4);
  for (const Vec& v : vs) {
    CHECK(std::abs(std::abs(v[0]) - 1.0) <= 1e-9);
    CHECK(std::abs(std::abs(v[1]) - 1.0) <= 1e-9);
  }
}

TEST_CASE("corner cut: max distance ratio is sqrt(4 - 2 sqrt(2))") {
  Polyhedron corner = quadrant();
  AugmentedPolyhedron aug = augment_cuts(corner, 0.09);
  REQUIRE(aug.cuts.size() == 1);
  // bisector of the two outward normals
  double s = 1.0 / std::sqrt(2.0);
  CHECK(aug.cuts[0].normal[0] == doctest::Approx(s).epsilon(1e-12));
  CHECK(aug.cuts[0].normal[1] == doctest::Approx(s).epsilon(1e-12));
  CHECK(aug.cuts[0].offset == doctest::Approx(0.0).epsilon(1e-12));

  double oracle = std::sqrt(4.0 - 2.0 * std::sqrt(2.0));
  for (double lambda : {0.1, 1.0, 7.5}) {
    double worst = 0.0;
    for (const Vec& v : vertices_2d(inflate(aug, lambda)))
      worst = std::max(worst, distance_to(corner, v) / lambda);
    CHECK(worst == doctest::Approx(oracle).epsilon(1e-9));
  }
}

TEST_CASE("cut augmentation guarantees the (1+eps) neighborhood") {
  RngStream rng(11, 0);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t m = 3 + std::size_t(rng.uniform() * 3);
    std::vector<Vec> normals;
    std::vector<double> offsets;
    for (std::size_t j = 0; j < m; ++j) {
      double a = 2.0 * 3.14159265358979 * rng.uniform();
      normals.push_back({std::cos(a), std::sin(a)});
      offsets.push_back(0.2 + rng.uniform());
    }
    Polyhedron p = make_polyhedron(normals, offsets);
    if (!is_feasible(p)) continue;
    double eps = 0.25;
    AugmentedPolyhedron aug = augment_cuts(p, eps);
    // cuts must not eat into the base polyhedron
    for (int i = 0; i < 200; ++i) {
      Vec x{6.0 * rng.uniform() - 3.0, 6.0 * rng.uniform() - 3.0};
      if (contains(p, x)) CHECK(contains(aug, x));
    }
    for (double lambda : {0.05, 0.5, 5.0}) {
      Polyhedron infl = inflate(aug, lambda);
      for (const Vec& v : vertices_2d(infl))
        CHECK(distance_to(p, v) <= (1.0 + eps) * lambda + 1e-7);
    }
  }
}

TEST_CASE("random family is deterministic and respects m, d") {
  RngStream a(3, 1), b(3, 1);
  auto fam1 = random_family(2, 3, 10, a, OffsetMode::FixedGrid);
  auto fam2 = random_family(2, 3, 10, b, OffsetMode::FixedGrid);
  REQUIRE(fam1.size() == 10);
  for (std::size_t i = 0; i < fam1.size(); ++i) {
    CHECK(fam1[i].dim() == 3);
    CHECK(fam1[i].face_count() == 2);
    for (std::size_t j = 0; j < 2; ++j) {
      CHECK(fam1[i].halfspaces()[j].normal == fam2[i].halfspaces()[j].normal);
      CHECK(fam1[i].halfspaces()[j].offset == fam2[i].halfspaces()[j].offset);
    }
  }
}

TEST_CASE("quantile offsets cover the sample cloud") {
  RngStream rng(8, 2);
  std::vector<Vec> samples;
  for (int i = 0; i < 400; ++i) samples.push_back({rng.normal(), rng.normal()});
  auto fam = random_family(1, 2, 12, rng, OffsetMode::Quantiles, &samples);
  for (const Polyhedron& p : fam) {
    std::size_t inside = 0;
    for (const Vec& x : samples)
      if (contains(p, x)) ++inside;
    CHECK(inside > 0);
    CHECK(inside < samples.size());
  }
}
