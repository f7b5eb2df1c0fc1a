#include "law.hpp"

#include <cmath>

#include "errors.hpp"

namespace accompany {

CompoundPoissonLaw::CompoundPoissonLaw(FiniteLaw b, double r) : base(std::move(b)), rate(r) {
  if (!(rate > 0.0))
    throw Error(ErrorCode::InvalidArgument, "compound poisson rate must be positive");
}

GaussianLaw::GaussianLaw(Vec m, Mat c) : dimension(m.size()), mean(std::move(m)), cov(std::move(c)) {
  if (cov.size() != dimension * dimension)
    throw Error(ErrorCode::DimensionMismatch, "covariance size mismatch");
  if (max_abs_asymmetry(cov, dimension) > 1e-12)
    throw Error(ErrorCode::NonPSDCovariance, "covariance asymmetric beyond 1e-12");
  // symmetrize the float dust, then demand PSD up to -1e-10 pivots
  for (std::size_t i = 0; i < dimension; ++i)
    for (std::size_t j = i + 1; j < dimension; ++j) {
      double avg = 0.5 * (cov[i * dimension + j] + cov[j * dimension + i]);
      cov[i * dimension + j] = cov[j * dimension + i] = avg;
    }
  cholesky_psd(cov, dimension, 1e-10);
}

bool GaussianLaw::is_degenerate() const {
  for (double x : cov)
    if (std::abs(x) > 1e-14) return false;
  return true;
}

std::size_t component_dim(const LawComponent& c) {
  return std::visit([](const auto& l) { return l.dim(); }, c);
}

ConvolutionLaw::ConvolutionLaw(std::size_t dim, std::vector<LawComponent> components)
    : dim_(dim), components_(std::move(components)) {
  for (const LawComponent& c : components_)
    if (component_dim(c) != dim_)
      throw Error(ErrorCode::DimensionMismatch, "component dimension mismatch");
}

void ConvolutionLaw::push(LawComponent c) {
  if (component_dim(c) != dim_)
    throw Error(ErrorCode::DimensionMismatch, "component dimension mismatch");
  components_.push_back(std::move(c));
}

bool ConvolutionLaw::has_gaussian() const {
  for (const LawComponent& c : components_)
    if (std::holds_alternative<GaussianLaw>(c)) return true;
  return false;
}

Moments moments(const FiniteLaw& law) {
  return {law.dim(), law.mean(), law.covariance()};
}

Moments moments(const CompoundPoissonLaw& law) {
  // mean = rate * E[X], cov = rate * E[X X^T] (non-central second moment)
  Vec m = scale(law.base.mean(), law.rate);
  Mat s = law.base.second_moment();
  for (double& x : s) x *= law.rate;
  return {law.dim(), std::move(m), std::move(s)};
}

Moments moments(const GaussianLaw& law) {
  return {law.dim(), law.mean, law.cov};
}

Moments moments(const LawComponent& c) {
  return std::visit([](const auto& l) { return moments(l); }, c);
}

Moments moments(const ConvolutionLaw& law) {
  Moments total{law.dim(), Vec(law.dim(), 0.0), zeros(law.dim())};
  for (const LawComponent& c : law.components()) {
    Moments m = moments(c);
    for (std::size_t i = 0; i < law.dim(); ++i) total.mean[i] += m.mean[i];
    for (std::size_t i = 0; i < total.cov.size(); ++i) total.cov[i] += m.cov[i];
  }
  return total;
}

GaussianLaw gaussian_match(const Moments& m) {
  return GaussianLaw(m.mean, m.cov);
}

FiniteLaw exact_pmf(const ConvolutionLaw& law, double tail_eps, std::size_t atom_cap) {
  std::size_t n_compound = 0;
  for (const LawComponent& c : law.components()) {
    if (std::holds_alternative<CompoundPoissonLaw>(c)) ++n_compound;
    if (const auto* g = std::get_if<GaussianLaw>(&c); g && !g->is_degenerate())
      throw Error(ErrorCode::GaussianNotExact,
                  "exact pmf undefined for laws with a gaussian component");
  }
  double per_component = n_compound > 0 ? tail_eps / static_cast<double>(n_compound) : tail_eps;

  FiniteLaw out = FiniteLaw::point_mass(Vec(law.dim(), 0.0));
  for (const LawComponent& c : law.components()) {
    if (const auto* f = std::get_if<FiniteLaw>(&c)) {
      out = convolve(out, *f, atom_cap);
    } else if (const auto* cp = std::get_if<CompoundPoissonLaw>(&c)) {
      out = convolve(out, compound_poisson_pmf(cp->base, cp->rate, per_component, atom_cap),
                     atom_cap);
    } else {
      const auto& g = std::get<GaussianLaw>(c);
      out = shift(out, g.mean);  // degenerate gaussian: point mass
    }
  }
  return out;
}

LawSampler::LawSampler(ConvolutionLaw law) : law_(std::move(law)) {
  for (const LawComponent& c : law_.components())
    if (const auto* g = std::get_if<GaussianLaw>(&c))
      chol_.push_back(cholesky_psd(g->cov, g->dimension, 1e-10));
}

Vec LawSampler::draw(RngStream& rng) const {
  Vec x(law_.dim(), 0.0);
  std::size_t gauss_index = 0;
  for (const LawComponent& c : law_.components()) {
    if (const auto* f = std::get_if<FiniteLaw>(&c)) {
      axpy(1.0, f->sample(rng), x);
    } else if (const auto* cp = std::get_if<CompoundPoissonLaw>(&c)) {
      std::uint64_t count = rng.poisson(cp->rate);
      for (std::uint64_t s = 0; s < count; ++s) axpy(1.0, cp->base.sample(rng), x);
    } else {
      const auto& g = std::get<GaussianLaw>(c);
      const Mat& L = chol_[gauss_index++];
      Vec z(g.dimension);
      for (double& zi : z) zi = rng.normal();
      for (std::size_t i = 0; i < g.dimension; ++i) {
        double s = g.mean[i];
        for (std::size_t j = 0; j <= i; ++j) s += L[i * g.dimension + j] * z[j];
        x[i] += s;
      }
    }
  }
  return x;
}

std::optional<GaussianLaw> combined_gaussian(const ConvolutionLaw& law) {
  bool found = false;
  Vec mean(law.dim(), 0.0);
  Mat cov = zeros(law.dim());
  for (const LawComponent& c : law.components()) {
    if (const auto* g = std::get_if<GaussianLaw>(&c)) {
      found = true;
      for (std::size_t i = 0; i < law.dim(); ++i) mean[i] += g->mean[i];
      for (std::size_t i = 0; i < cov.size(); ++i) cov[i] += g->cov[i];
    }
  }
  if (!found) return std::nullopt;
  return GaussianLaw(std::move(mean), std::move(cov));
}

ConvolutionLaw without_gaussian(const ConvolutionLaw& law) {
  ConvolutionLaw out(law.dim());
  for (const LawComponent& c : law.components())
    if (!std::holds_alternative<GaussianLaw>(c)) out.push(c);
  return out;
}

}  // namespace accompany
