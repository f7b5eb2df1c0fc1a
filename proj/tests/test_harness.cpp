#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <atomic>
#include <cmath>
#include <cstdlib>

#include "core/experiments.hpp"
#include "core/serialize.hpp"

using namespace accompany;

TEST_CASE("fnv1a frozen oracles") {
  CHECK(fnv1a_hash("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a_hash("a") == 0xaf63dc4c8601ec8cULL);
}

TEST_CASE("parallel_for_cells visits every index once") {
  std::vector<std::atomic<int>> hits(257);
  for (auto& h : hits) h = 0;
  parallel_for_cells(hits.size(), [&](std::size_t i) { hits[i]++; });
  for (auto& h : hits) CHECK(h == 1);
}

TEST_CASE("parallel_for_cells propagates exceptions") {
  CHECK_THROWS_AS(parallel_for_cells(8,
                                     [&](std::size_t i) {
                                       if (i == 3)
                                         throw Error(ErrorCode::InvalidArgument, "boom");
                                     }),
                  Error);
}

TEST_CASE("bound envelope convention at tau = 0") {
  CHECK(bound_envelope(0.1, 0.0) == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(bound_envelope(0.0, 0.0) == 0.0);
  // tau = 0.1: 0.1 (|log 0.1| + 1) = 0.1 (2.302585... + 1)
  CHECK(bound_envelope(0.0, 0.1) == doctest::Approx(0.330258509299).epsilon(1e-10));
  // monotone in both arguments on (0, 1/e)
  CHECK(bound_envelope(0.2, 0.05) > bound_envelope(0.1, 0.05));
  CHECK(bound_envelope(0.1, 0.1) > bound_envelope(0.1, 0.05));
}

TEST_CASE("bernstein tail oracle values and clamps") {
  // V = 1, W = 1, lambda = 3: 2 exp(-9 / (2 (1 + 1))) = 2 exp(-9/4)
  std::vector<double> w{1.0};
  CHECK(bernstein_tail(w, 3.0) == doctest::Approx(2.0 * std::exp(-2.25)).epsilon(1e-12));
  CHECK(bernstein_tail(w, 0.0) == 1.0);          // clamp at 1
  CHECK(bernstein_tail(w, 1.0) == 1.0);          // 2 exp(-3/8) > 1 clamps too
  CHECK(bernstein_tail({}, 1.0) == 1.0);         // zero-variance convention
  CHECK(bernstein_tail({0.0, 0.0}, 1.0) == 1.0);
  CHECK(bernstein_tail(w, 50.0) < 1e-10);        // decays
}

TEST_CASE("grid schemes validate and honor the generator") {
  Scheme lat = make_grid_scheme("lattice", 5, 2, 0.1, 0.05);
  CHECK(validate_scheme(lat).ok());
  CHECK(lat.factors[0].u_law.size() == 2);
  Scheme ber = make_grid_scheme("bernoulli", 5, 1, 0.1, 0.0);
  CHECK(validate_scheme(ber).ok());
  CHECK(ber.factors[0].u_law.size() == 1);
  CHECK_THROWS_AS(make_grid_scheme("fancy", 5, 1, 0.1, 0.0), Error);
}

TEST_CASE("sweep output is deterministic and carries the manifest contract") {
  SweepConfig cfg;
  cfg.p_grid = {0.1, 0.05};
  cfg.tau_grid = {0.0, 0.05};
  cfg.n_grid = {4};
  cfg.lambda_grid = {0.0, 0.1};
  RunResult a = run_bound_sweep(cfg);
  RunResult b = run_bound_sweep(cfg);
  CHECK(a.csv == b.csv);
  CHECK(a.manifest.dump() == b.manifest.dump());
  CHECK(a.csv.back() == '\n');
  CHECK(a.manifest.at("version") == kLibraryVersion);
  CHECK(a.manifest.at("cells").size() == 4);
  CHECK(a.manifest.contains("config_hash"));
  CHECK(a.manifest.contains("bernstein_form"));
}

TEST_CASE("monte carlo sweep cells are seed-deterministic too") {
  SweepConfig cfg;
  cfg.p_grid = {0.1};
  cfg.tau_grid = {0.05};
  cfg.n_grid = {3};
  cfg.d_grid = {2};
  cfg.m_grid = {2};
  cfg.lambda_grid = {0.0, 0.2};
  cfg.samples = 2000;
  cfg.family_count = 8;
  cfg.seed = 7;
  RunResult a = run_bound_sweep(cfg);
  RunResult b = run_bound_sweep(cfg);
  CHECK(a.csv == b.csv);
  CHECK(a.manifest.at("cells")[0].at("conf") > 0.0);
}

TEST_CASE("thread cap does not change the merged output") {
  SweepConfig cfg;
  cfg.p_grid = {0.2, 0.1, 0.05};
  cfg.tau_grid = {0.0};
  cfg.n_grid = {3};
  cfg.lambda_grid = {0.0};
  RunResult wide = run_bound_sweep(cfg);
  setenv("ACCOMPANY_LAB_THREADS", "1", 1);
  RunResult narrow = run_bound_sweep(cfg);
  unsetenv("ACCOMPANY_LAB_THREADS");
  CHECK(wide.csv == narrow.csv);
}

TEST_CASE("lecam cells respect the exact bound") {
  LecamConfig cfg;
  cfg.n_grid = {1, 5, 10};
  cfg.p_grid = {0.05, 0.1, 0.2};
  RunResult r = lecam_experiment(cfg);
  CHECK(r.manifest.at("all_ok") == true);
  for (const auto& cell : r.manifest.at("cells"))
    CHECK(cell.at("tv").get<double>() <=
          cell.at("n").get<double>() * std::pow(cell.at("p").get<double>(), 2) + 2e-12);
}

TEST_CASE("poissonization sandwich on a fixed instance") {
  PoissonizationInstance inst;
  inst.dimension = 2;
  inst.factor_laws = {
      FiniteLaw(2, {{0.0, 0.0}, {0.6, 0.1}}, {0.8, 0.2}),
      FiniteLaw(2, {{0.1, -0.2}, {-0.1, 0.2}}, {0.5, 0.5}),
  };
  inst.shifts = {{0.12, 0.02}, {0.0, 0.0}};
  inst.directions = {{1.0, 0.0}, {0.0, 1.0}};
  inst.offsets = {0.7, 0.5};
  inst.lambda_grid = {0.2, 0.5};
  RunResult r = poissonization_experiment(inst, 20000, 3);
  CHECK(r.manifest.at("all_ok") == true);
  RunResult r2 = poissonization_experiment(inst, 20000, 3);
  CHECK(r.csv == r2.csv);
}

TEST_CASE("distance runner exact path matches the levy fixed point") {
  DistanceConfig cfg;
  cfg.scheme = make_grid_scheme("bernoulli", 1, 1, 0.1, 0.0);
  cfg.exact = true;
  RunResult r = run_distance(cfg);
  double value = r.manifest.at("cells")[0].at("value").get<double>();
  // single Bernoulli factor vs Poisson(0.1): atoms on the integers, gap at 0
  // is e^{-0.1} - 0.9 = 0.00483...; the fixed point sits at that plateau
  CHECK(value == doctest::Approx(std::exp(-0.1) - 0.9).epsilon(1e-4));
}

TEST_CASE("distance runner rejects the exact path off the 1-d line") {
  DistanceConfig cfg;
  cfg.scheme = make_grid_scheme("lattice", 2, 2, 0.1, 0.05);
  cfg.exact = true;
  CHECK_THROWS_AS(run_distance(cfg), Error);
}

TEST_CASE("serialization round trips") {
  Scheme s = make_grid_scheme("lattice", 3, 2, 0.15, 0.07);
  Scheme back = scheme_from_json(to_json(s));
  CHECK(back.tau == s.tau);
  CHECK(back.dimension == s.dimension);
  REQUIRE(back.factors.size() == 3);
  CHECK(back.factors[0].p == doctest::Approx(0.15).epsilon(1e-12));
  CHECK(max_pmf_deviation(back.factors[0].u_law, s.factors[0].u_law) <= 1e-12);

  ConvolutionLaw law = build_dstar(s);
  ConvolutionLaw law2 = law_from_json(to_json(law));
  Moments m1 = moments(law), m2 = moments(law2);
  for (std::size_t i = 0; i < m1.mean.size(); ++i)
    CHECK(m1.mean[i] == doctest::Approx(m2.mean[i]).epsilon(1e-12));

  Polyhedron p = make_polyhedron({{1.0, 0.0}, {0.0, 1.0}}, {0.5, kInfOffset});
  Polyhedron p2 = polyhedron_from_json(to_json(p));
  CHECK(p2.halfspaces()[1].offset == kInfOffset);
  CHECK(p2.halfspaces()[0].offset == doctest::Approx(0.5).epsilon(1e-12));

  CHECK_THROWS_AS(scheme_from_string("{not json"), Error);
}

TEST_CASE("cuts runner certifies the epsilon guarantee") {
  Polyhedron corner = make_polyhedron({{1.0, 0.0}, {0.0, 1.0}}, {0.0, 0.0});
  RunResult r = run_cuts(corner, 0.09);
  CHECK(r.manifest.at("guarantee_ok") == true);
  CHECK(r.manifest.at("max_ratio").get<double>() ==
        doctest::Approx(std::sqrt(4.0 - 2.0 * std::sqrt(2.0))).epsilon(1e-9));
}
