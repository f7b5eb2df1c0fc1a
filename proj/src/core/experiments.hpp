#pragma once

#include <cstdint>
#include <functional>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "metrics.hpp"
#include "scheme.hpp"
#include "serialize.hpp"

namespace accompany {

// parallel loop over experiment cells; worker count capped by the
// ACCOMPANY_LAB_THREADS environment variable, results always merged in cell
// index order by the caller's slot vector
void parallel_for_cells(std::size_t count, const std::function<void(std::size_t)>& body);

std::uint64_t fnv1a_hash(const std::string& text);

inline const char* kLibraryVersion = "0.1.0";

// run outcome: a CSV table plus a JSON manifest sidecar. Wall-clock is
// reported on the side (log_line) so that output files stay byte-identical
// across reruns with the same seed and config.
struct RunResult {
  std::string csv;
  json manifest;
  std::string log_line;
};

// the approximating law selector
enum class Approximant { D, DStar, DStarStar, DBar };
Approximant approximant_from_string(const std::string& name);
const char* approximant_name(Approximant a);

ConvolutionLaw build_approximant(const Scheme& s, Approximant a);

// p + tau (|log tau| + 1), with value 0 at tau = 0 (continuity convention)
double bound_envelope(double p, double tau);

// sub-gamma tail bound 2 exp(-lambda^2 / (2 (V + W lambda / 3))) for
// sum w_i (nu_i - 1), nu_i iid Poisson(1); clamped to 1
double bernstein_tail(const std::vector<double>& weights, double lambda);

// ---- experiments ----------------------------------------------------------

struct SweepConfig {
  std::vector<double> p_grid{0.2, 0.1, 0.05, 0.02, 0.01};
  std::vector<double> tau_grid{0.0, 0.01, 0.05, 0.1};
  std::vector<std::size_t> n_grid{5, 10, 20};
  std::vector<std::size_t> d_grid{1};
  std::vector<std::size_t> m_grid{1};
  std::vector<double> lambda_grid{0.0, 0.02, 0.05, 0.1, 0.2, 0.4};
  Approximant approximant = Approximant::D;
  std::string generator = "lattice";  // "bernoulli" (tau ignored) | "lattice"
  std::size_t samples = 100000;       // per law, Monte Carlo cells only
  std::size_t family_count = 64;      // random polyhedra per MC cell
  std::uint64_t seed = 0;
  double tail_eps = 1e-12;
};
SweepConfig sweep_config_from_json(const json& j);

// builds the scheme for one sweep cell: Bernoulli (U = E_0) or lattice
// (U uniform on {-tau, +tau} axis points), V = E_1 in the first coordinate
Scheme make_grid_scheme(const std::string& generator, std::size_t n, std::size_t d, double p,
                        double tau);

RunResult run_bound_sweep(const SweepConfig& cfg);

struct LecamConfig {
  std::vector<std::size_t> n_grid{10};
  std::vector<double> p_grid{0.1};
  double tail_eps = 1e-12;
};
LecamConfig lecam_config_from_json(const json& j);

RunResult lecam_experiment(const LecamConfig& cfg);

// Poissonized sample comparison: S ~ F, T ~ D (Poissonized counts),
// T* = T - Delta with Delta = sum (nu_i - 1) a_i
struct PoissonizationInstance {
  std::size_t dimension = 1;
  std::vector<FiniteLaw> factor_laws;
  std::vector<Vec> shifts;       // a_i
  std::vector<Vec> directions;   // unit t_j
  std::vector<double> offsets;   // b_j of the probe polyhedron
  std::vector<double> lambda_grid{0.25, 0.5, 1.0};
};
PoissonizationInstance poissonization_instance_from_json(const json& j);
json to_json(const PoissonizationInstance& inst);

RunResult poissonization_experiment(const PoissonizationInstance& inst, std::size_t samples,
                                    std::uint64_t seed);

struct DistanceConfig {
  Scheme scheme;
  Approximant approximant = Approximant::D;
  std::string metric = "lm";  // lm | pim | rhom
  std::size_t m = 1;
  std::size_t samples = 100000;
  std::size_t family_count = 64;
  std::uint64_t seed = 0;
  bool exact = false;  // d=1, m=1 breakpoint-exact path
  double tail_eps = 1e-12;
};
DistanceConfig distance_config_from_json(const json& j);

RunResult run_distance(const DistanceConfig& cfg);

// cuts demo: augment a 2-d polygon, report cut list and the empirically
// worst dist(x, P) / lambda over inflated-region vertices across lambda decades
RunResult run_cuts(const Polyhedron& p, double epsilon);

}  // namespace accompany
