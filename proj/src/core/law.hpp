#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "finite_law.hpp"

namespace accompany {

// law of sum_{s=1}^{N} X_s with N ~ Poisson(rate) and X_s iid base
struct CompoundPoissonLaw {
  FiniteLaw base;
  double rate;

  CompoundPoissonLaw(FiniteLaw b, double r);
  std::size_t dim() const { return base.dim(); }
};

struct GaussianLaw {
  std::size_t dimension;
  Vec mean;
  Mat cov;  // symmetric PSD, validated at construction

  GaussianLaw(Vec m, Mat c);
  std::size_t dim() const { return dimension; }
  bool is_degenerate() const;  // zero covariance: the point mass E_mean
};

using LawComponent = std::variant<FiniteLaw, CompoundPoissonLaw, GaussianLaw>;

std::size_t component_dim(const LawComponent& c);

// convolution product of independent components; empty list denotes E_0
class ConvolutionLaw {
 public:
  explicit ConvolutionLaw(std::size_t dim) : dim_(dim) {}
  ConvolutionLaw(std::size_t dim, std::vector<LawComponent> components);

  std::size_t dim() const { return dim_; }
  const std::vector<LawComponent>& components() const { return components_; }
  void push(LawComponent c);

  bool has_gaussian() const;

 private:
  std::size_t dim_;
  std::vector<LawComponent> components_;
};

struct Moments {
  std::size_t dim;
  Vec mean;
  Mat cov;
};

Moments moments(const FiniteLaw& law);
Moments moments(const CompoundPoissonLaw& law);
Moments moments(const GaussianLaw& law);
Moments moments(const LawComponent& c);
Moments moments(const ConvolutionLaw& law);

// Gaussian with exactly the mean and covariance of the given moments
GaussianLaw gaussian_match(const Moments& m);

constexpr std::size_t kDefaultAtomCap = 4'000'000;

// Exact pmf of a lattice/finite-support convolution law. Compound components
// are truncated independently with per-component tail budget
// tail_eps / (#compound components); missing mass of the result <= tail_eps.
// Gaussian components are rejected unless degenerate.
FiniteLaw exact_pmf(const ConvolutionLaw& law, double tail_eps,
                    std::size_t atom_cap = kDefaultAtomCap);

// Precomputed sampler for a convolution law (Cholesky factors, cumulative
// weights); draw() is cheap and deterministic per RngStream.
class LawSampler {
 public:
  explicit LawSampler(ConvolutionLaw law);
  Vec draw(RngStream& rng) const;
  std::size_t dim() const { return law_.dim(); }

 private:
  ConvolutionLaw law_;
  std::vector<Mat> chol_;  // per gaussian component, in component order
};

// combined gaussian part (means/covs add); nullopt if no gaussian component
std::optional<GaussianLaw> combined_gaussian(const ConvolutionLaw& law);

// the law without its gaussian components
ConvolutionLaw without_gaussian(const ConvolutionLaw& law);

}  // namespace accompany
