#include "scheme.hpp"

#include <cmath>

namespace accompany {

double Scheme::max_p() const {
  double p = 0.0;
  for (const MixtureFactor& f : factors) p = std::max(p, f.p);
  return p;
}

ValidationReport validate_scheme(const Scheme& s) {
  ValidationReport report;
  auto flag = [&](std::size_t i, ErrorCode code, std::string msg) {
    report.violations.push_back({i, code, std::move(msg)});
  };
  if (s.tau < 0.0) flag(0, ErrorCode::InvalidArgument, "tau must be nonnegative");
  for (std::size_t i = 0; i < s.factors.size(); ++i) {
    const MixtureFactor& f = s.factors[i];
    if (!(f.p >= 0.0 && f.p <= 1.0))
      flag(i, ErrorCode::WeightViolation, "p outside [0,1]");
    if (f.u_law.dim() != s.dimension || f.v_law.dim() != s.dimension) {
      flag(i, ErrorCode::DimensionMismatch, "factor dimension mismatch");
      continue;
    }
    for (const Vec& a : f.u_law.atoms()) {
      if (norm(a) > s.tau + 1e-12) {
        flag(i, ErrorCode::SupportViolation,
             "U atom at norm " + std::to_string(norm(a)) + " outside tau-ball");
        break;
      }
    }
    if (norm(f.u_law.mean()) > 1e-12)
      flag(i, ErrorCode::MeanViolation,
           "U mean has norm " + std::to_string(norm(f.u_law.mean())));
  }
  return report;
}

void require_valid(const Scheme& s) {
  ValidationReport r = validate_scheme(s);
  if (!r.ok())
    throw Error(ErrorCode::InvalidScheme,
                "invalid scheme: " + r.violations.front().message);
}

FiniteLaw factor_law(const MixtureFactor& f) { return mix(f.u_law, f.v_law, f.p); }

std::vector<Vec> sample_scheme(const Scheme& s, RngStream& rng, std::size_t count) {
  require_valid(s);
  std::vector<Vec> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    Vec x(s.dimension, 0.0);
    for (const MixtureFactor& f : s.factors) {
      bool rare = rng.uniform() < f.p;
      axpy(1.0, rare ? f.v_law.sample(rng) : f.u_law.sample(rng), x);
    }
    out.push_back(std::move(x));
  }
  return out;
}

ConvolutionLaw accompany_law(const Scheme& s, bool recenter) {
  require_valid(s);
  ConvolutionLaw law(s.dimension);
  for (const MixtureFactor& f : s.factors) {
    if (!recenter) {
      law.push(CompoundPoissonLaw(factor_law(f), 1.0));
    } else {
      Vec a = f.u_law.mean();
      law.push(FiniteLaw::point_mass(a));
      law.push(CompoundPoissonLaw(shift(factor_law(f), scale(a, -1.0)), 1.0));
    }
  }
  return law;
}

namespace {

FiniteLaw center_factor(const MixtureFactor& f, std::size_t dim) {
  // (1 - p) U + p E_0
  return mix(f.u_law, FiniteLaw::point_mass(Vec(dim, 0.0)), f.p);
}

FiniteLaw jump_factor(const MixtureFactor& f, std::size_t dim) {
  // (1 - p) E_0 + p V
  return mix(FiniteLaw::point_mass(Vec(dim, 0.0)), f.v_law, f.p);
}

}  // namespace

Moments dstar_center_moments(const Scheme& s) {
  Moments total{s.dimension, Vec(s.dimension, 0.0), zeros(s.dimension)};
  for (const MixtureFactor& f : s.factors) {
    Moments m = moments(center_factor(f, s.dimension));
    for (std::size_t i = 0; i < s.dimension; ++i) total.mean[i] += m.mean[i];
    for (std::size_t i = 0; i < total.cov.size(); ++i) total.cov[i] += m.cov[i];
  }
  return total;
}

ConvolutionLaw build_dstar(const Scheme& s) {
  require_valid(s);
  ConvolutionLaw law(s.dimension);
  law.push(gaussian_match(dstar_center_moments(s)));
  for (const MixtureFactor& f : s.factors)
    law.push(CompoundPoissonLaw(jump_factor(f, s.dimension), 1.0));
  return law;
}

ConvolutionLaw d0_compound(const Scheme& s) {
  ConvolutionLaw law(s.dimension);
  for (const MixtureFactor& f : s.factors)
    law.push(CompoundPoissonLaw(center_factor(f, s.dimension), 1.0));
  return law;
}

ConvolutionLaw d0_gaussian(const Scheme& s) {
  ConvolutionLaw law(s.dimension);
  law.push(gaussian_match(dstar_center_moments(s)));
  return law;
}

ConvolutionLaw d0_mixed(const Scheme& s) {
  ConvolutionLaw law(s.dimension);
  std::size_t split = (s.factors.size() + 1) / 2;
  Moments rest{s.dimension, Vec(s.dimension, 0.0), zeros(s.dimension)};
  for (std::size_t i = 0; i < s.factors.size(); ++i) {
    if (i < split) {
      law.push(CompoundPoissonLaw(center_factor(s.factors[i], s.dimension), 1.0));
    } else {
      Moments m = moments(center_factor(s.factors[i], s.dimension));
      for (std::size_t k = 0; k < s.dimension; ++k) rest.mean[k] += m.mean[k];
      for (std::size_t k = 0; k < rest.cov.size(); ++k) rest.cov[k] += m.cov[k];
    }
  }
  if (split < s.factors.size()) law.push(gaussian_match(rest));
  return law;
}

ConvolutionLaw build_dstarstar(const Scheme& s, const ConvolutionLaw& d0) {
  require_valid(s);
  if (d0.dim() != s.dimension)
    throw Error(ErrorCode::DimensionMismatch, "d0 dimension mismatch");
  for (const LawComponent& c : d0.components()) {
    if (std::holds_alternative<FiniteLaw>(c))
      throw Error(ErrorCode::InvalidArgument,
                  "d0 must consist of compound Poisson and Gaussian components");
    if (const auto* cp = std::get_if<CompoundPoissonLaw>(&c)) {
      for (const Vec& a : cp->base.atoms())
        if (norm(a) > s.tau + 1e-12)
          throw Error(ErrorCode::SpectralSupportViolation,
                      "d0 jump atom at norm " + std::to_string(norm(a)) +
                          " exceeds tau = " + std::to_string(s.tau));
    }
  }
  Moments want = dstar_center_moments(s);
  Moments have = moments(d0);
  double worst = 0.0;
  for (std::size_t i = 0; i < s.dimension; ++i)
    worst = std::max(worst, std::abs(want.mean[i] - have.mean[i]));
  for (std::size_t i = 0; i < want.cov.size(); ++i)
    worst = std::max(worst, std::abs(want.cov[i] - have.cov[i]));
  if (worst > 1e-9) {
    std::string msg = "d0 moments deviate by " + std::to_string(worst) +
                      "; d0 mean/cov vs target mean/cov: (";
    for (double x : have.mean) msg += std::to_string(x) + " ";
    msg += ") vs (";
    for (double x : want.mean) msg += std::to_string(x) + " ";
    msg += ")";
    throw Error(ErrorCode::MomentMismatch, msg);
  }

  ConvolutionLaw law(s.dimension, d0.components());
  for (const MixtureFactor& f : s.factors)
    law.push(CompoundPoissonLaw(jump_factor(f, s.dimension), 1.0));
  return law;
}

}  // namespace accompany
