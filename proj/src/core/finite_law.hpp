#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "linalg.hpp"
#include "rng.hpp"

namespace accompany {

// Finite-support probability law on R^d: the exact-oracle workhorse.
// Coinciding atoms (up to a 1e-12 coordinate grid) are merged at
// construction, so supports stay canonical under convolution and mapping.
class FiniteLaw {
 public:
  // mass_deficit_tol allows subprobability outputs of truncated
  // constructions; the default demands weights summing to 1 within 1e-12.
  FiniteLaw(std::size_t dim, std::vector<Vec> atoms, std::vector<double> weights,
            double mass_deficit_tol = 1e-12);

  static FiniteLaw point_mass(Vec x);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return atoms_.size(); }
  const std::vector<Vec>& atoms() const { return atoms_; }
  const std::vector<double>& weights() const { return weights_; }
  double total_mass() const { return total_mass_; }

  Vec mean() const;
  // E[x x^T] (non-central)
  Mat second_moment() const;
  Mat covariance() const;

  Vec sample(RngStream& rng) const;

  // weight at a point, 0 if absent (grid-keyed lookup)
  double pmf_at(const Vec& x) const;

 private:
  std::size_t dim_;
  std::vector<Vec> atoms_;
  std::vector<double> weights_;
  std::vector<double> cumulative_;
  double total_mass_ = 0.0;
  std::map<std::vector<std::int64_t>, std::size_t> index_;
};

// grid key used for atom identity (1e-12 resolution)
std::vector<std::int64_t> atom_key(const Vec& x);

// (1-p) * u + p * v on the merged support
FiniteLaw mix(const FiniteLaw& u, const FiniteLaw& v, double p);

// convolution a * b; throws SupportExplosion past atom_cap
FiniteLaw convolve(const FiniteLaw& a, const FiniteLaw& b, std::size_t atom_cap);

// law of X + shift
FiniteLaw shift(const FiniteLaw& a, const Vec& offset);

// pmf of a Poisson(rate) number of iid base jumps, truncated at the smallest
// count K whose Poisson tail is <= tail_eps; resulting mass deficit <= tail_eps
FiniteLaw compound_poisson_pmf(const FiniteLaw& base, double rate, double tail_eps,
                               std::size_t atom_cap);

// smallest K with P(Poisson(rate) > K) <= tail_eps
std::size_t poisson_truncation(double rate, double tail_eps);

// max |pmf difference| over the union support, matching atoms from the two
// laws by proximity (cluster tolerance per coordinate) rather than exact keys,
// so that supports built along different float paths still align
double max_pmf_deviation(const FiniteLaw& a, const FiniteLaw& b, double match_tol = 1e-9);

// 0.5 * sum |pmf difference| over the union support, same matching rule
double l1_pmf_distance(const FiniteLaw& a, const FiniteLaw& b, double match_tol = 1e-9);

}  // namespace accompany
