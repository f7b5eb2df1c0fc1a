#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "linalg.hpp"
#include "rng.hpp"

namespace accompany {

inline constexpr double kInfOffset = std::numeric_limits<double>::infinity();

// closed halfspace { x : <x, normal> <= offset }, unit normal; offset may be
// +inf, in which case the halfspace is all of R^d and is dropped from
// computations
struct HalfSpace {
  Vec normal;
  double offset;
};

class Polyhedron {
 public:
  Polyhedron(std::size_t dim, std::vector<HalfSpace> halfspaces);

  std::size_t dim() const { return dim_; }
  std::size_t face_count() const { return halfspaces_.size(); }
  const std::vector<HalfSpace>& halfspaces() const { return halfspaces_; }

 private:
  std::size_t dim_;
  std::vector<HalfSpace> halfspaces_;
};

// Cut augmentation: the base faces first, then the added cuts,
// each of which contains the base polyhedron.
struct AugmentedPolyhedron {
  Polyhedron base;
  std::vector<HalfSpace> cuts;
  double epsilon;

  std::size_t total_faces() const { return base.face_count() + cuts.size(); }
};

// builds a polyhedron from raw normals/offsets, renormalizing each normal to
// unit length with the offset scaled consistently
Polyhedron make_polyhedron(const std::vector<Vec>& normals, const std::vector<double>& offsets);

bool contains(const Polyhedron& p, const Vec& x);
bool contains(const AugmentedPolyhedron& p, const Vec& x);

// coordinate inflation P_lambda: every finite offset raised by lambda
Polyhedron inflate(const Polyhedron& p, double lambda);
Polyhedron inflate(const AugmentedPolyhedron& p, double lambda);

// Euclidean distance from x to P. Closed forms for at most two effective
// faces; Dykstra's cyclic projections otherwise (iteration cap 10^4).
// Throws Infeasible when P is empty, NonConvergence when the cap is hit.
double distance_to(const Polyhedron& p, const Vec& x, double tol = 1e-9);

bool in_neighborhood(const Polyhedron& p, const Vec& x, double lambda, double tol = 1e-9);

// projection of x onto P (the minimizer realizing distance_to)
Vec project_onto(const Polyhedron& p, const Vec& x, double tol = 1e-9);

bool is_feasible(const Polyhedron& p, double tol = 1e-7);

// vertices of a 2-d polyhedron (pairwise boundary-line intersections that
// satisfy every constraint); deduplicated
std::vector<Vec> vertices_2d(const Polyhedron& p, double tol = 1e-9);

// Adds bisector cuts at support-function offsets until every angular gap
// between consecutive face normals guarantees inflate(aug, lambda) to lie in
// the (1+epsilon)*lambda Euclidean neighborhood of P, for every lambda > 0.
// Exact construction for d = 2 only.
AugmentedPolyhedron augment_cuts(const Polyhedron& p, double epsilon);

enum class OffsetMode { FixedGrid, Quantiles };

// deterministic random family of m-face polyhedra; surrogates the sup over
// the full polyhedron class. Quantile mode draws offsets as empirical
// quantiles of <sample, t_j> over the provided samples.
std::vector<Polyhedron> random_family(std::size_t m, std::size_t d, std::size_t count,
                                      RngStream& rng, OffsetMode mode,
                                      const std::vector<Vec>* samples = nullptr,
                                      const std::vector<double>* grid = nullptr);

}  // namespace accompany
