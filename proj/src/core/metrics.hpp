#pragma once

#include <string>
#include <variant>
#include <vector>

#include "polyhedron.hpp"
#include "projection.hpp"

namespace accompany {

// Monte Carlo surrogate for a law: raw samples plus run provenance
struct EmpiricalMeasure {
  std::vector<Vec> samples;
  std::string provenance;
};

using Measure = std::variant<FiniteLaw, EmpiricalMeasure>;

std::size_t measure_dim(const Measure& mu);

enum class SetKind { ExactSet, Inflate, Neighborhood };

// probability of the (possibly inflated / neighborhood) polyhedron under mu
double measure_prob(const Measure& mu, const Polyhedron& p, SetKind kind, double lambda = 0.0,
                    double tol = 1e-9);

enum class DiscrepancyKind { Inflate, Neighborhood };

struct DiscrepancyReport {
  double value = 0.0;  // clamped to [0, 1]
  double lambda = 0.0;
  DiscrepancyKind kind = DiscrepancyKind::Inflate;
  std::size_t family_size = 0;
  double confidence_radius = 0.0;
  std::size_t witness_index = 0;
};

// max over the family of max{G{P} - H{P'}, H{P} - G{P'}} with P' the
// lambda-inflation or lambda-neighborhood; a lower bound for the sup over
// the full polyhedron class
DiscrepancyReport discrepancy(const Measure& g, const Measure& h,
                              const std::vector<Polyhedron>& family, double lambda,
                              DiscrepancyKind kind, double delta = 0.05, double tol = 1e-9);

// inf { lambda : discrepancy(lambda) <= lambda }, resolved by bisection on
// the nonincreasing discrepancy profile
double metric_from_discrepancy(const Measure& g, const Measure& h,
                               const std::vector<Polyhedron>& family, DiscrepancyKind kind,
                               double tol = 1e-6, double delta = 0.05);

// exact 1-d Levy distance between finite-support laws:
// inf{eps : F(b-eps)-eps <= G(b) <= F(b+eps)+eps for all b}
double levy_1d_exact(const FiniteLaw& f, const FiniteLaw& g, double tol = 1e-12);

// total variation distance, exact on finite supports
double tv_exact(const FiniteLaw& f, const FiniteLaw& g);

struct RhoReport {
  double value = 0.0;
  std::size_t witness_index = 0;
};

// sup over the family of |F{P} - G{P}|
RhoReport rho_m(const Measure& f, const Measure& g, const std::vector<Polyhedron>& family);

// simultaneous Hoeffding radius over family_size two-sided estimates
double confidence_radius(std::size_t min_count, std::size_t family_size, double delta);

// ---- exact directional path (halfspace families at projected breakpoints) --

// cdf of <X, t> for a convolution law: discrete part resolved exactly,
// gaussian part folded in through the normal cdf
class DirectionalCdf {
 public:
  DirectionalCdf(const ConvolutionLaw& law, const Vec& direction, double tail_eps = 1e-12,
                 std::size_t atom_cap = kDefaultAtomCap);

  double cdf(double b) const;       // P(<X,t> <= b)
  double cdf_left(double b) const;  // P(<X,t> < b)
  const std::vector<double>& positions() const { return positions_; }
  double sigma() const { return sigma_; }

 private:
  std::vector<double> positions_;  // sorted discrete support (gaussian mean folded in)
  std::vector<double> weights_;
  std::vector<double> cumulative_;
  double sigma_ = 0.0;
};

// sup over b of max{A(b) - B(b+lambda), B(b) - A(b+lambda)} for one direction;
// exact via breakpoint enumeration (both one-sided limits)
double directional_discrepancy(const DirectionalCdf& a, const DirectionalCdf& b, double lambda);

// precomputed cdf pairs for repeated profile/metric evaluation on the same
// pair of laws (the cdf construction dominates the cost)
class ExactDirectionalComparison {
 public:
  ExactDirectionalComparison(const ConvolutionLaw& g, const ConvolutionLaw& h,
                             const std::vector<Vec>& directions, double tail_eps = 1e-12);
  double profile(double lambda) const;
  double metric(double tol = 1e-9) const;

 private:
  std::vector<std::pair<DirectionalCdf, DirectionalCdf>> cdfs_;
};

// the m=1 discrepancy value L_1(G, H, lambda) over the given unit directions,
// exact at projected-atom breakpoints
double exact_discrepancy_profile(const ConvolutionLaw& g, const ConvolutionLaw& h,
                                 const std::vector<Vec>& directions, double lambda,
                                 double tail_eps = 1e-12);

// inf { lambda : profile(lambda) <= lambda } by bisection
double exact_directional_metric(const ConvolutionLaw& g, const ConvolutionLaw& h,
                                const std::vector<Vec>& directions, double tol = 1e-9,
                                double tail_eps = 1e-12);

}  // namespace accompany
