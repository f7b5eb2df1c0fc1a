#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "core/metrics.hpp"

using namespace accompany;

namespace {

FiniteLaw random_law_1d(RngStream& rng) {
  std::size_t k = 1 + std::size_t(rng.uniform() * 4);
  std::vector<Vec> atoms;
  std::vector<double> w;
  double total = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    atoms.push_back({4.0 * rng.uniform() - 2.0});
    double x = 0.05 + rng.uniform();
    w.push_back(x);
    total += x;
  }
  for (double& x : w) x /= total;
  return FiniteLaw(1, atoms, w);
}

}  // namespace

TEST_CASE("levy distance between point masses is min(a, 1)") {
  FiniteLaw e0 = FiniteLaw::point_mass({0.0});
  for (double a : {0.1, 0.5, 2.0, 10.0}) {
    FiniteLaw ea = FiniteLaw::point_mass({a});
    CHECK(levy_1d_exact(e0, ea) == doctest::Approx(std::min(a, 1.0)).epsilon(1e-9));
  }
}

TEST_CASE("levy metric axioms on random triples") {
  RngStream rng(21, 0);
  for (int t = 0; t < 500; ++t) {
    FiniteLaw f = random_law_1d(rng), g = random_law_1d(rng), h = random_law_1d(rng);
    double fg = levy_1d_exact(f, g);
    double gf = levy_1d_exact(g, f);
    CHECK(std::abs(fg - gf) <= 1e-9);                       // symmetry
    CHECK(levy_1d_exact(f, f) <= 1e-12);                    // identity
    CHECK(fg <= levy_1d_exact(f, h) + levy_1d_exact(h, g) + 1e-9);  // triangle
    CHECK(fg >= 0.0);
  }
}

TEST_CASE("tv distance oracle") {
  FiniteLaw a(1, {{0.0}, {1.0}}, {0.5, 0.5});
  FiniteLaw b(1, {{0.0}, {2.0}}, {0.25, 0.75});
  // tv = 0.5 (|0.5-0.25| + |0.5-0| + |0-0.75|) = 0.75
  CHECK(tv_exact(a, b) == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(tv_exact(a, a) == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("discrepancy on exact finite laws with a fixed halfspace") {
  FiniteLaw f = FiniteLaw::point_mass({0.0});
  FiniteLaw g = FiniteLaw::point_mass({0.5});
  std::vector<Polyhedron> family{make_polyhedron({{1.0}}, {0.0})};
  // lambda = 0: F{x<=0} - G{x<=0} = 1
  DiscrepancyReport r0 = discrepancy(f, g, family, 0.0, DiscrepancyKind::Inflate);
  CHECK(r0.value == doctest::Approx(1.0).epsilon(1e-12));
  // lambda = 0.6: inflated set x <= 0.6 captures both
  DiscrepancyReport r1 = discrepancy(f, g, family, 0.6, DiscrepancyKind::Inflate);
  CHECK(r1.value == doctest::Approx(0.0).epsilon(1e-12));
  CHECK_THROWS_AS(discrepancy(f, g, family, -0.1, DiscrepancyKind::Inflate), Error);
  CHECK_THROWS_AS(discrepancy(f, g, {}, 0.0, DiscrepancyKind::Inflate), Error);
}

TEST_CASE("two notions coincide on halfspace families") {
  RngStream rng(31, 0);
  std::vector<Vec> xs, ys;
  for (int i = 0; i < 2000; ++i) {
    xs.push_back({rng.normal(), rng.normal()});
    ys.push_back({rng.normal() + 0.3, rng.normal()});
  }
  Measure g = EmpiricalMeasure{xs, "g"};
  Measure h = EmpiricalMeasure{ys, "h"};
  for (int t = 0; t < 100; ++t) {
    auto family = random_family(1, 2, 1, rng, OffsetMode::Quantiles, &xs);
    for (double lambda : {0.0, 0.1, 1.0}) {
      double a = discrepancy(g, h, family, lambda, DiscrepancyKind::Inflate).value;
      double b = discrepancy(g, h, family, lambda, DiscrepancyKind::Neighborhood).value;
      CHECK(std::abs(a - b) <= 1e-12);
    }
  }
}

TEST_CASE("metric bisection solves the point-mass case") {
  // F = E_0, G = E_a: discrepancy(lambda) = 1 for lambda < a, 0 after, so the
  // fixed point is min(a, 1)
  FiniteLaw f = FiniteLaw::point_mass({0.0});
  std::vector<Polyhedron> family{make_polyhedron({{1.0}}, {0.0}),
                                 make_polyhedron({{-1.0}}, {0.0})};
  for (double a : {0.3, 0.7}) {
    FiniteLaw g = FiniteLaw::point_mass({a});
    double m = metric_from_discrepancy(f, g, family, DiscrepancyKind::Inflate, 1e-8);
    CHECK(m == doctest::Approx(a).epsilon(1e-6));
  }
}

TEST_CASE("rho_m witnesses the largest plain gap") {
  FiniteLaw f(1, {{0.0}, {1.0}}, {0.5, 0.5});
  FiniteLaw g(1, {{0.0}, {1.0}}, {0.9, 0.1});
  std::vector<Polyhedron> family{make_polyhedron({{1.0}}, {0.5}),
                                 make_polyhedron({{1.0}}, {2.0})};
  RhoReport r = rho_m(f, g, family);
  CHECK(r.value == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(r.witness_index == 0);
}

TEST_CASE("confidence radius frozen oracle") {
  // sqrt(log(4 * 100 / 0.05) / (2 * 5000))
  CHECK(confidence_radius(5000, 100, 0.05) == doctest::Approx(0.029978653773413463).epsilon(1e-12));
}

TEST_CASE("directional cdf matches the erf oracle for a pure gaussian") {
  ConvolutionLaw law(1);
  law.push(GaussianLaw({1.0}, {4.0}));
  DirectionalCdf cdf(law, {1.0});
  for (double b : {-3.0, 0.0, 1.0, 2.5}) {
    double z = (b - 1.0) / 2.0;
    double want = 0.5 * std::erfc(-z / std::sqrt(2.0));
    CHECK(cdf.cdf(b) == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("directional cdf of an atomic law and its one-sided limits") {
  ConvolutionLaw law(1);
  law.push(FiniteLaw(1, {{0.0}, {1.0}}, {0.4, 0.6}));
  DirectionalCdf cdf(law, {1.0});
  CHECK(cdf.cdf(0.0) == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(cdf.cdf_left(0.0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(cdf.cdf(1.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(cdf.cdf_left(1.0) == doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("exact directional metric over both halfline directions equals levy") {
  RngStream rng(41, 0);
  std::vector<Vec> dirs{{1.0}, {-1.0}};
  for (int t = 0; t < 50; ++t) {
    FiniteLaw f = random_law_1d(rng), g = random_law_1d(rng);
    ConvolutionLaw lf(1), lg(1);
    lf.push(f);
    lg.push(g);
    double m = exact_directional_metric(lf, lg, dirs, 1e-10);
    CHECK(m == doctest::Approx(levy_1d_exact(f, g)).epsilon(1e-7));
  }
}

TEST_CASE("exact profile is nonincreasing in lambda") {
  ConvolutionLaw f(1), g(1);
  f.push(CompoundPoissonLaw(FiniteLaw(1, {{1.0}}, {1.0}), 0.5));
  g.push(GaussianLaw({0.5}, {0.5}));
  std::vector<Vec> dirs{{1.0}, {-1.0}};
  double prev = 2.0;
  for (double lambda : {0.0, 0.05, 0.1, 0.2, 0.5, 1.0}) {
    double v = exact_discrepancy_profile(f, g, dirs, lambda);
    CHECK(v <= prev + 1e-12);
    prev = v;
  }
}

TEST_CASE("measure_prob on empirical data counts memberships") {
  EmpiricalMeasure e{{{0.0}, {1.0}, {2.0}, {3.0}}, "grid"};
  Polyhedron h = make_polyhedron({{1.0}}, {1.5});
  CHECK(measure_prob(e, h, SetKind::ExactSet) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(measure_prob(e, h, SetKind::Inflate, 1.0) == doctest::Approx(0.75).epsilon(1e-14));
}
