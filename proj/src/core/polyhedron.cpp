#include "polyhedron.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "errors.hpp"
#include "finite_law.hpp"

namespace accompany {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

std::vector<const HalfSpace*> effective_faces(const Polyhedron& p) {
  std::vector<const HalfSpace*> faces;
  for (const HalfSpace& h : p.halfspaces())
    if (std::isfinite(h.offset)) faces.push_back(&h);
  return faces;
}

}  // namespace

Polyhedron::Polyhedron(std::size_t dim, std::vector<HalfSpace> halfspaces)
    : dim_(dim), halfspaces_(std::move(halfspaces)) {
  if (halfspaces_.empty())
    throw Error(ErrorCode::InvalidArgument, "polyhedron needs at least one face");
  for (const HalfSpace& h : halfspaces_) {
    if (h.normal.size() != dim_)
      throw Error(ErrorCode::DimensionMismatch, "halfspace normal dimension mismatch");
    if (std::abs(norm(h.normal) - 1.0) > 1e-12)
      throw Error(ErrorCode::InvalidArgument, "halfspace normal must be unit length");
  }
}

Polyhedron make_polyhedron(const std::vector<Vec>& normals, const std::vector<double>& offsets) {
  if (normals.empty() || normals.size() != offsets.size())
    throw Error(ErrorCode::InvalidArgument, "normals/offsets length mismatch");
  std::size_t d = normals.front().size();
  std::vector<HalfSpace> faces;
  faces.reserve(normals.size());
  for (std::size_t j = 0; j < normals.size(); ++j) {
    if (normals[j].size() != d)
      throw Error(ErrorCode::DimensionMismatch, "normal dimension mismatch");
    double len = norm(normals[j]);
    if (len < 1e-300)
      throw Error(ErrorCode::ZeroNormal, "zero normal vector");
    faces.push_back({scale(normals[j], 1.0 / len),
                     std::isfinite(offsets[j]) ? offsets[j] / len : kInfOffset});
  }
  return Polyhedron(d, std::move(faces));
}

bool contains(const Polyhedron& p, const Vec& x) {
  if (x.size() != p.dim())
    throw Error(ErrorCode::DimensionMismatch, "point dimension mismatch");
  for (const HalfSpace& h : p.halfspaces())
    if (std::isfinite(h.offset) && dot(x, h.normal) > h.offset) return false;
  return true;
}

bool contains(const AugmentedPolyhedron& p, const Vec& x) {
  if (!contains(p.base, x)) return false;
  for (const HalfSpace& h : p.cuts)
    if (std::isfinite(h.offset) && dot(x, h.normal) > h.offset) return false;
  return true;
}

Polyhedron inflate(const Polyhedron& p, double lambda) {
  if (lambda < 0.0) throw Error(ErrorCode::NegativeLambda, "lambda must be nonnegative");
  std::vector<HalfSpace> faces = p.halfspaces();
  for (HalfSpace& h : faces)
    if (std::isfinite(h.offset)) h.offset += lambda;
  return Polyhedron(p.dim(), std::move(faces));
}

Polyhedron inflate(const AugmentedPolyhedron& p, double lambda) {
  if (lambda < 0.0) throw Error(ErrorCode::NegativeLambda, "lambda must be nonnegative");
  std::vector<HalfSpace> faces = p.base.halfspaces();
  faces.insert(faces.end(), p.cuts.begin(), p.cuts.end());
  return inflate(Polyhedron(p.base.dim(), std::move(faces)), lambda);
}

namespace {

// projection onto the intersection of at most two halfspaces, closed form
std::optional<Vec> project_small(const std::vector<const HalfSpace*>& faces, const Vec& x) {
  if (faces.empty()) return x;
  if (faces.size() == 1) {
    double excess = dot(x, faces[0]->normal) - faces[0]->offset;
    if (excess <= 0.0) return x;
    Vec y = x;
    axpy(-excess, faces[0]->normal, y);
    return y;
  }
  if (faces.size() != 2) return std::nullopt;

  const HalfSpace& a = *faces[0];
  const HalfSpace& b = *faces[1];
  double ea = dot(x, a.normal) - a.offset;
  double eb = dot(x, b.normal) - b.offset;
  if (ea <= 0.0 && eb <= 0.0) return x;

  double g = dot(a.normal, b.normal);
  double det = 1.0 - g * g;
  if (det < 1e-14) {
    // parallel normals: same direction -> the tighter constraint wins;
    // opposite directions -> slab, empty iff offsets sum negative
    if (g > 0.0) {
      const HalfSpace& tight = (a.offset <= b.offset) ? a : b;
      double excess = dot(x, tight.normal) - tight.offset;
      Vec y = x;
      if (excess > 0.0) axpy(-excess, tight.normal, y);
      return y;
    }
    if (a.offset + b.offset < -1e-12)
      throw Error(ErrorCode::Infeasible, "empty slab");
    Vec y = x;
    if (ea > 0.0) axpy(-ea, a.normal, y);
    else if (eb > 0.0) axpy(-eb, b.normal, y);
    return y;
  }

  // single-face projections, kept only if feasible for the other face
  std::optional<Vec> best;
  double best_d2 = std::numeric_limits<double>::infinity();
  auto consider = [&](const Vec& y) {
    double d2 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      double diff = x[i] - y[i];
      d2 += diff * diff;
    }
    if (d2 < best_d2) {
      best_d2 = d2;
      best = y;
    }
  };
  if (ea > 0.0) {
    Vec y = x;
    axpy(-ea, a.normal, y);
    if (dot(y, b.normal) <= b.offset + 1e-13) consider(y);
  }
  if (eb > 0.0) {
    Vec y = x;
    axpy(-eb, b.normal, y);
    if (dot(y, a.normal) <= a.offset + 1e-13) consider(y);
  }
  if (!best) {
    // corner: project onto the intersection of both boundary hyperplanes
    double alpha = (ea - g * eb) / det;
    double beta = (eb - g * ea) / det;
    Vec y = x;
    axpy(-alpha, a.normal, y);
    axpy(-beta, b.normal, y);
    consider(y);
  }
  return best;
}

Vec dykstra_project(const std::vector<const HalfSpace*>& faces, const Vec& x, double tol) {
  constexpr std::size_t kMaxCycles = 10000;
  std::size_t m = faces.size();
  Vec y = x;
  std::vector<Vec> corrections(m, Vec(x.size(), 0.0));
  for (std::size_t cycle = 0; cycle < kMaxCycles; ++cycle) {
    double max_move = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      Vec z = y;
      axpy(1.0, corrections[j], z);
      double excess = dot(z, faces[j]->normal) - faces[j]->offset;
      Vec y_next = z;
      if (excess > 0.0) axpy(-excess, faces[j]->normal, y_next);
      for (std::size_t i = 0; i < y.size(); ++i) {
        corrections[j][i] = z[i] - y_next[i];
        max_move = std::max(max_move, std::abs(y_next[i] - y[i]));
      }
      y = std::move(y_next);
    }
    if (max_move < tol * 1e-3) {
      double worst = 0.0;
      for (const HalfSpace* h : faces)
        worst = std::max(worst, dot(y, h->normal) - h->offset);
      if (worst > 1e-6)
        throw Error(ErrorCode::Infeasible, "projection stalled outside every face");
      return y;
    }
  }
  throw Error(ErrorCode::NonConvergence, "projection iteration cap exceeded");
}

}  // namespace

Vec project_onto(const Polyhedron& p, const Vec& x, double tol) {
  if (x.size() != p.dim())
    throw Error(ErrorCode::DimensionMismatch, "point dimension mismatch");
  auto faces = effective_faces(p);
  if (auto y = project_small(faces, x)) return *y;
  return dykstra_project(faces, x, tol);
}

double distance_to(const Polyhedron& p, const Vec& x, double tol) {
  Vec y = project_onto(p, x, tol);
  return norm(sub(x, y));
}

bool in_neighborhood(const Polyhedron& p, const Vec& x, double lambda, double tol) {
  return distance_to(p, x, tol) <= lambda + tol;
}

bool is_feasible(const Polyhedron& p, double tol) {
  try {
    Vec y = project_onto(p, Vec(p.dim(), 0.0));
    for (const HalfSpace& h : p.halfspaces())
      if (std::isfinite(h.offset) && dot(y, h.normal) - h.offset > tol) return false;
    return true;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Infeasible) return false;
    throw;
  }
}

std::vector<Vec> vertices_2d(const Polyhedron& p, double tol) {
  if (p.dim() != 2)
    throw Error(ErrorCode::UnsupportedDimension, "vertex enumeration is 2-d only");
  auto faces = effective_faces(p);
  std::vector<Vec> verts;
  std::map<std::vector<std::int64_t>, bool> seen;
  for (std::size_t i = 0; i < faces.size(); ++i) {
    for (std::size_t j = i + 1; j < faces.size(); ++j) {
      const Vec& a = faces[i]->normal;
      const Vec& b = faces[j]->normal;
      double det = a[0] * b[1] - a[1] * b[0];
      if (std::abs(det) < 1e-10) continue;
      Vec v{(faces[i]->offset * b[1] - faces[j]->offset * a[1]) / det,
            (a[0] * faces[j]->offset - b[0] * faces[i]->offset) / det};
      bool ok = true;
      for (const HalfSpace* h : faces)
        if (dot(v, h->normal) > h->offset + tol) { ok = false; break; }
      if (!ok) continue;
      auto key = atom_key(v);
      if (!seen.emplace(std::move(key), true).second) continue;
      verts.push_back(std::move(v));
    }
  }
  return verts;
}

AugmentedPolyhedron augment_cuts(const Polyhedron& p, double epsilon) {
  if (p.dim() != 2)
    throw Error(ErrorCode::UnsupportedDimension, "exact cut construction is 2-d only");
  if (!(epsilon > 0.0))
    throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");

  // merge parallel duplicate normals, keeping the tightest offset
  std::map<std::int64_t, std::pair<Vec, double>> merged;  // angle key -> (normal, offset)
  for (const HalfSpace* h : effective_faces(p)) {
    std::int64_t key = std::llround(std::atan2(h->normal[1], h->normal[0]) * 1e10);
    auto it = merged.find(key);
    if (it == merged.end())
      merged.emplace(key, std::make_pair(h->normal, h->offset));
    else
      it->second.second = std::min(it->second.second, h->offset);
  }

  AugmentedPolyhedron out{p, {}, epsilon};
  if (merged.size() <= 1) return out;  // halfspace or whole space: P_lambda = P^lambda

  if (!is_feasible(p)) throw Error(ErrorCode::DegenerateInput, "empty polyhedron");

  std::vector<Vec> verts = vertices_2d(p);
  if (verts.empty()) return out;  // slab or single effective face

  auto support = [&](const Vec& t) {
    double best = -std::numeric_limits<double>::infinity();
    for (const Vec& v : verts) best = std::max(best, dot(v, t));
    return best;
  };

  std::vector<std::pair<double, const std::pair<Vec, double>*>> fan;
  for (const auto& [key, entry] : merged)
    fan.push_back({std::atan2(entry.first[1], entry.first[0]), &entry});
  std::sort(fan.begin(), fan.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  double theta_max = 2.0 * std::acos(1.0 / (1.0 + epsilon));

  for (std::size_t i = 0; i < fan.size(); ++i) {
    // tighten redundant originals so every fan direction carries its support offset
    double s = support(fan[i].second->first);
    if (s < fan[i].second->second - 1e-12)
      out.cuts.push_back({fan[i].second->first, s});

    double phi0 = fan[i].first;
    double phi1 = fan[(i + 1) % fan.size()].first + (i + 1 == fan.size() ? 2.0 * kPi : 0.0);
    double gap = phi1 - phi0;
    if (gap >= kPi - 1e-9) continue;  // no common violation wedge across this gap
    if (gap <= theta_max) continue;
    auto k = static_cast<std::size_t>(std::ceil(gap / theta_max));
    for (std::size_t j = 1; j < k; ++j) {
      double phi = phi0 + gap * static_cast<double>(j) / static_cast<double>(k);
      Vec t{std::cos(phi), std::sin(phi)};
      out.cuts.push_back({t, support(t)});
    }
  }
  return out;
}

std::vector<Polyhedron> random_family(std::size_t m, std::size_t d, std::size_t count,
                                      RngStream& rng, OffsetMode mode,
                                      const std::vector<Vec>* samples,
                                      const std::vector<double>* grid) {
  if (m < 1 || d < 1 || count < 1)
    throw Error(ErrorCode::InvalidArgument, "m, d, count must be at least 1");
  static const std::vector<double> kDefaultGrid = {-2.0, -1.0, -0.5, -0.2, 0.0,
                                                   0.2,  0.5,  1.0,  2.0};
  const std::vector<double>& g = grid ? *grid : kDefaultGrid;
  if (mode == OffsetMode::Quantiles && (!samples || samples->empty()))
    throw Error(ErrorCode::InvalidArgument, "quantile mode needs samples");

  std::vector<Polyhedron> family;
  family.reserve(count);
  for (std::size_t c = 0; c < count; ++c) {
    std::vector<HalfSpace> faces;
    for (std::size_t j = 0; j < m; ++j) {
      Vec t(d);
      double len = 0.0;
      while (len < 1e-12) {
        for (double& x : t) x = rng.normal();
        len = norm(t);
      }
      t = scale(t, 1.0 / len);
      double b;
      if (mode == OffsetMode::FixedGrid) {
        b = g[static_cast<std::size_t>(rng.uniform() * static_cast<double>(g.size())) % g.size()];
      } else {
        std::vector<double> proj;
        proj.reserve(samples->size());
        for (const Vec& x : *samples) proj.push_back(dot(x, t));
        std::sort(proj.begin(), proj.end());
        auto idx = static_cast<std::size_t>(rng.uniform() * static_cast<double>(proj.size()));
        b = proj[std::min(idx, proj.size() - 1)];
      }
      faces.push_back({std::move(t), b});
    }
    family.emplace_back(d, std::move(faces));
  }
  return family;
}

}  // namespace accompany
