#pragma once

#include <vector>

#include "law.hpp"

namespace accompany {

enum class MapKind {
  Coordinate,  // x -> (<x, t_1>, ..., <x, t_m>) in R^m
  Orthogonal,  // orthogonal projection onto span{t_j}, expressed in an
               // orthonormal basis of that span (dimension = rank)
};

class ProjectionMap {
 public:
  static ProjectionMap build(const std::vector<Vec>& directions, MapKind kind);

  MapKind kind() const { return kind_; }
  std::size_t in_dim() const { return in_dim_; }
  std::size_t out_dim() const { return rows_.size(); }
  std::size_t rank() const { return kind_ == MapKind::Coordinate ? basis_rank_ : rows_.size(); }
  const std::vector<Vec>& directions() const { return directions_; }
  // the rows of the linear map (directions for coordinate kind, orthonormal
  // basis for orthogonal kind)
  const std::vector<Vec>& rows() const { return rows_; }

  Vec apply(const Vec& x) const;

  // for a polyhedron with directions inside the projected span: the face
  // normals expressed in output coordinates (orthogonal kind)
  Vec to_output_coords(const Vec& x) const { return apply(x); }

 private:
  ProjectionMap() = default;
  MapKind kind_ = MapKind::Coordinate;
  std::size_t in_dim_ = 0;
  std::size_t basis_rank_ = 0;
  std::vector<Vec> directions_;
  std::vector<Vec> rows_;
};

FiniteLaw pushforward(const FiniteLaw& law, const ProjectionMap& map);
CompoundPoissonLaw pushforward(const CompoundPoissonLaw& law, const ProjectionMap& map);
GaussianLaw pushforward(const GaussianLaw& law, const ProjectionMap& map);
ConvolutionLaw pushforward(const ConvolutionLaw& law, const ProjectionMap& map);

// operator norm of the map via power iteration on A^T A
double operator_norm(const ProjectionMap& map, std::size_t iters = 300);

// max absolute pmf difference between (e(W)) pushed forward and e(W pushed
// forward), both computed exactly at matched truncation; expected <= 2 * tail_eps
double verify_exponential_commutation(const FiniteLaw& w, const ProjectionMap& map,
                                      double tail_eps,
                                      std::size_t atom_cap = kDefaultAtomCap);

}  // namespace accompany
