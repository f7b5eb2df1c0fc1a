#include "projection.hpp"

#include <cmath>

#include "errors.hpp"

namespace accompany {

ProjectionMap ProjectionMap::build(const std::vector<Vec>& directions, MapKind kind) {
  if (directions.empty())
    throw Error(ErrorCode::InvalidArgument, "projection map needs directions");
  std::size_t d = directions.front().size();
  ProjectionMap map;
  map.kind_ = kind;
  map.in_dim_ = d;
  for (const Vec& t : directions) {
    if (t.size() != d)
      throw Error(ErrorCode::DimensionMismatch, "direction dimension mismatch");
    double len = norm(t);
    if (len < 1e-300) throw Error(ErrorCode::ZeroDirection, "zero direction");
    map.directions_.push_back(scale(t, 1.0 / len));
  }
  if (kind == MapKind::Coordinate) {
    map.rows_ = map.directions_;
    map.basis_rank_ = map.rows_.size();
  } else {
    // pivoted Gram-Schmidt with drop tolerance 1e-10
    for (const Vec& t : map.directions_) {
      Vec r = t;
      for (const Vec& q : map.rows_) axpy(-dot(r, q), q, r);
      double len = norm(r);
      if (len > 1e-10) map.rows_.push_back(scale(r, 1.0 / len));
    }
    map.basis_rank_ = map.rows_.size();
  }
  return map;
}

Vec ProjectionMap::apply(const Vec& x) const {
  if (x.size() != in_dim_)
    throw Error(ErrorCode::DimensionMismatch, "point dimension mismatch");
  Vec y(rows_.size());
  for (std::size_t j = 0; j < rows_.size(); ++j) y[j] = dot(x, rows_[j]);
  return y;
}

FiniteLaw pushforward(const FiniteLaw& law, const ProjectionMap& map) {
  std::vector<Vec> atoms;
  atoms.reserve(law.size());
  for (const Vec& x : law.atoms()) atoms.push_back(map.apply(x));
  double deficit = std::max(1.0 - law.total_mass(), 0.0);
  // coinciding images merge with summed weights inside the constructor
  return FiniteLaw(map.out_dim(), std::move(atoms), law.weights(), deficit + 1e-12);
}

CompoundPoissonLaw pushforward(const CompoundPoissonLaw& law, const ProjectionMap& map) {
  return CompoundPoissonLaw(pushforward(law.base, map), law.rate);
}

GaussianLaw pushforward(const GaussianLaw& law, const ProjectionMap& map) {
  std::size_t m = map.out_dim();
  Vec mean = map.apply(law.mean);
  Mat cov = zeros(m);
  std::size_t d = law.dimension;
  for (std::size_t i = 0; i < m; ++i) {
    Vec sigma_ri = matvec(law.cov, d, map.rows()[i]);
    for (std::size_t j = 0; j < m; ++j) cov[i * m + j] = dot(sigma_ri, map.rows()[j]);
  }
  // conjugation can leave float asymmetry; symmetrize before validation
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      double avg = 0.5 * (cov[i * m + j] + cov[j * m + i]);
      cov[i * m + j] = cov[j * m + i] = avg;
    }
  return GaussianLaw(std::move(mean), std::move(cov));
}

ConvolutionLaw pushforward(const ConvolutionLaw& law, const ProjectionMap& map) {
  ConvolutionLaw out(map.out_dim());
  for (const LawComponent& c : law.components())
    out.push(std::visit([&](const auto& l) -> LawComponent { return pushforward(l, map); }, c));
  return out;
}

double operator_norm(const ProjectionMap& map, std::size_t iters) {
  std::size_t d = map.in_dim();
  Vec x(d, 0.0);
  x[0] = 1.0;
  for (std::size_t i = 1; i < d; ++i) x[i] = 1.0 / static_cast<double>(i + 2);
  double value = 0.0;
  for (std::size_t it = 0; it < iters; ++it) {
    Vec y = map.apply(x);
    Vec z(d, 0.0);
    for (std::size_t j = 0; j < map.out_dim(); ++j) axpy(y[j], map.rows()[j], z);
    double len = norm(z);
    if (len < 1e-300) return 0.0;
    value = std::sqrt(len / std::max(norm(x), 1e-300));
    x = scale(z, 1.0 / len);
  }
  Vec y = map.apply(x);
  value = norm(y) / norm(x);
  return value;
}

double verify_exponential_commutation(const FiniteLaw& w, const ProjectionMap& map,
                                      double tail_eps, std::size_t atom_cap) {
  ConvolutionLaw lhs_law(w.dim());
  lhs_law.push(CompoundPoissonLaw(w, 1.0));
  FiniteLaw lhs = pushforward(exact_pmf(lhs_law, tail_eps, atom_cap), map);

  ConvolutionLaw rhs_law(map.out_dim());
  rhs_law.push(CompoundPoissonLaw(pushforward(w, map), 1.0));
  FiniteLaw rhs = exact_pmf(rhs_law, tail_eps, atom_cap);

  return max_pmf_deviation(lhs, rhs);
}

}  // namespace accompany
