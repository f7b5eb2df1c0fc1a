#pragma once

#include <string>
#include <vector>

#include "law.hpp"

namespace accompany {

// one factor F_i = (1 - p) * U + p * V of the mixture scheme
struct MixtureFactor {
  double p;
  FiniteLaw u_law;
  FiniteLaw v_law;
};

// the whole triangular row: ball radius tau plus the factor list
struct Scheme {
  double tau = 0.0;
  std::size_t dimension = 1;
  std::vector<MixtureFactor> factors;

  double max_p() const;
};

struct Violation {
  std::size_t factor_index;
  ErrorCode code;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

// checks every factor's support-in-tau-ball and zero-mean conditions plus
// structural invariants; never throws on a merely invalid scheme
ValidationReport validate_scheme(const Scheme& s);

void require_valid(const Scheme& s);  // throws InvalidScheme on failure

// the factor law F_i as an explicit finite pmf
FiniteLaw factor_law(const MixtureFactor& f);

// F = product of factors, sampled via the Bernoulli-switch construction:
// alpha_i ~ Bernoulli(p_i) selects V_i over U_i
std::vector<Vec> sample_scheme(const Scheme& s, RngStream& rng, std::size_t count);

// the accompanying compound Poisson product: recenter=false gives
// D = prod e(F_i); recenter=true gives the shifted variant that first
// centers each factor at a_i = mean of U_i and restores the shift
ConvolutionLaw accompany_law(const Scheme& s, bool recenter);

// Gaussian-plus-jumps approximant: the Gaussian matches the moments of
// prod_i ((1-p_i) U_i + p_i E_0), and each factor contributes
// e((1-p_i) E_0 + p_i V_i)
ConvolutionLaw build_dstar(const Scheme& s);

// the inner product law prod_i ((1-p_i) U_i + p_i E_0) whose moments any
// admissible d0 must match
Moments dstar_center_moments(const Scheme& s);

// generalization with a caller-chosen infinitely divisible d0 (compound
// Poisson and/or Gaussian components, jumps inside the tau-ball, moments
// matching dstar_center_moments within 1e-9)
ConvolutionLaw build_dstarstar(const Scheme& s, const ConvolutionLaw& d0);

// canonical d0 choices reproducing D and D*
ConvolutionLaw d0_compound(const Scheme& s);  // prod e((1-p_i) U_i + p_i E_0)
ConvolutionLaw d0_gaussian(const Scheme& s);  // Phi of the center product

// genuinely hybrid admissible d0: compound Poisson for the first half of the
// factors, Gaussian matching the moments of the rest
ConvolutionLaw d0_mixed(const Scheme& s);

}  // namespace accompany
