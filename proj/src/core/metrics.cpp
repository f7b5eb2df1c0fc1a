#include "metrics.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"

namespace accompany {

std::size_t measure_dim(const Measure& mu) {
  if (const auto* f = std::get_if<FiniteLaw>(&mu)) return f->dim();
  const auto& e = std::get<EmpiricalMeasure>(mu);
  if (e.samples.empty()) throw Error(ErrorCode::EmptyMeasure, "empty empirical measure");
  return e.samples.front().size();
}

namespace {

bool member(const Polyhedron& p, const Vec& x, SetKind kind, double lambda, double tol) {
  switch (kind) {
    case SetKind::ExactSet: return contains(p, x);
    case SetKind::Inflate: return contains(inflate(p, lambda), x);
    case SetKind::Neighborhood: return in_neighborhood(p, x, lambda, tol);
  }
  return false;
}

std::size_t sample_count(const Measure& mu) {
  if (std::holds_alternative<FiniteLaw>(mu)) return 0;  // exact
  return std::get<EmpiricalMeasure>(mu).samples.size();
}

double support_radius(const Measure& mu) {
  double r = 0.0;
  if (const auto* f = std::get_if<FiniteLaw>(&mu)) {
    for (const Vec& x : f->atoms()) r = std::max(r, norm(x));
  } else {
    for (const Vec& x : std::get<EmpiricalMeasure>(mu).samples) r = std::max(r, norm(x));
  }
  return r;
}

}  // namespace

double measure_prob(const Measure& mu, const Polyhedron& p, SetKind kind, double lambda,
                    double tol) {
  if (measure_dim(mu) != p.dim())
    throw Error(ErrorCode::DimensionMismatch, "measure/polyhedron dimension mismatch");
  Polyhedron target = kind == SetKind::Inflate ? inflate(p, lambda) : p;
  SetKind effective = kind == SetKind::Inflate ? SetKind::ExactSet : kind;
  // neighborhoods of the empty set are empty; inflations of infeasible sets
  // may still be nonempty and are handled by plain membership
  if (effective == SetKind::Neighborhood && !is_feasible(p)) return 0.0;
  if (const auto* f = std::get_if<FiniteLaw>(&mu)) {
    double prob = 0.0;
    for (std::size_t i = 0; i < f->size(); ++i)
      if (member(target, f->atoms()[i], effective, lambda, tol)) prob += f->weights()[i];
    return prob;
  }
  const auto& e = std::get<EmpiricalMeasure>(mu);
  if (e.samples.empty()) throw Error(ErrorCode::EmptyMeasure, "empty empirical measure");
  std::size_t hits = 0;
  for (const Vec& x : e.samples)
    if (member(target, x, effective, lambda, tol)) ++hits;
  return static_cast<double>(hits) / static_cast<double>(e.samples.size());
}

double confidence_radius(std::size_t min_count, std::size_t family_size, double delta) {
  if (min_count < 1 || !(delta > 0.0 && delta < 1.0))
    throw Error(ErrorCode::InvalidArgument, "bad confidence_radius arguments");
  return std::sqrt(std::log(4.0 * static_cast<double>(family_size) / delta) /
                   (2.0 * static_cast<double>(min_count)));
}

DiscrepancyReport discrepancy(const Measure& g, const Measure& h,
                              const std::vector<Polyhedron>& family, double lambda,
                              DiscrepancyKind kind, double delta, double tol) {
  if (family.empty()) throw Error(ErrorCode::EmptyFamily, "empty polyhedron family");
  if (lambda < 0.0) throw Error(ErrorCode::NegativeLambda, "lambda must be nonnegative");
  SetKind grown = kind == DiscrepancyKind::Inflate ? SetKind::Inflate : SetKind::Neighborhood;

  double best = -2.0;
  std::size_t witness = 0;
  for (std::size_t i = 0; i < family.size(); ++i) {
    const Polyhedron& p = family[i];
    double gp = measure_prob(g, p, SetKind::ExactSet);
    double hp = measure_prob(h, p, SetKind::ExactSet);
    double gg = measure_prob(g, p, grown, lambda, tol);
    double hg = measure_prob(h, p, grown, lambda, tol);
    double v = std::max(gp - hg, hp - gg);
    if (v > best) {
      best = v;
      witness = i;
    }
  }

  DiscrepancyReport report;
  report.lambda = lambda;
  report.kind = kind;
  report.family_size = family.size();
  report.witness_index = witness;
  report.value = std::clamp(best, 0.0, 1.0);
  std::size_t min_count = 0;
  for (const Measure* mu : {&g, &h}) {
    std::size_t c = sample_count(*mu);
    if (c > 0) min_count = min_count == 0 ? c : std::min(min_count, c);
  }
  report.confidence_radius =
      min_count > 0 ? confidence_radius(min_count, family.size(), delta) : 0.0;
  return report;
}

double metric_from_discrepancy(const Measure& g, const Measure& h,
                               const std::vector<Polyhedron>& family, DiscrepancyKind kind,
                               double tol, double delta) {
  double lambda_max = support_radius(g) + support_radius(h) + 1.0;
  auto value_at = [&](double lambda) {
    return discrepancy(g, h, family, lambda, kind, delta).value;
  };

  // f is nonincreasing in lambda; find the crossing of f(lambda) <= lambda
  double f0 = value_at(0.0);
  if (f0 <= 0.0) return 0.0;
  double lo = 0.0, hi = lambda_max;
  double f_prev = f0;
  double lambda_prev = 0.0;
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    double fm = value_at(mid);
    if (mid > lambda_prev && fm > f_prev + 1e-12)
      throw Error(ErrorCode::NonMonotoneDetected, "discrepancy increased with lambda");
    if (mid > lambda_prev) {
      f_prev = fm;
      lambda_prev = mid;
    }
    if (fm <= mid)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

namespace {

// one-sided cdf evaluations for a sorted step function
struct StepCdf {
  std::vector<double> pos;
  std::vector<double> cum;

  double at(double b) const {
    auto it = std::upper_bound(pos.begin(), pos.end(), b);
    return it == pos.begin() ? 0.0 : cum[static_cast<std::size_t>(it - pos.begin()) - 1];
  }
  double left(double b) const {
    auto it = std::lower_bound(pos.begin(), pos.end(), b);
    return it == pos.begin() ? 0.0 : cum[static_cast<std::size_t>(it - pos.begin()) - 1];
  }
};

StepCdf make_step(const FiniteLaw& f) {
  std::vector<std::pair<double, double>> entries;
  entries.reserve(f.size());
  for (std::size_t i = 0; i < f.size(); ++i)
    entries.emplace_back(f.atoms()[i][0], f.weights()[i]);
  std::sort(entries.begin(), entries.end());
  StepCdf s;
  double acc = 0.0;
  for (const auto& [x, w] : entries) {
    acc += w;
    s.pos.push_back(x);
    s.cum.push_back(acc);
  }
  return s;
}

}  // namespace

double levy_1d_exact(const FiniteLaw& f, const FiniteLaw& g, double tol) {
  if (f.dim() != 1 || g.dim() != 1)
    throw Error(ErrorCode::DimensionMismatch, "levy_1d_exact needs 1-d laws");
  StepCdf F = make_step(f);
  StepCdf G = make_step(g);

  // sup_b X(b - eps) - Y(b): piecewise constant in b, so both one-sided
  // values at every breakpoint {atoms of Y} u {atoms of X + eps} suffice
  auto violation = [&](const StepCdf& X, const StepCdf& Y, double eps) {
    double worst = 0.0;
    auto consider = [&](double b) {
      worst = std::max(worst, X.at(b - eps) - Y.at(b));
      worst = std::max(worst, X.left(b - eps) - Y.left(b));
    };
    for (double x : X.pos) consider(x + eps);
    for (double y : Y.pos) consider(y);
    return worst;
  };
  auto ok = [&](double eps) {
    return violation(F, G, eps) <= eps && violation(G, F, eps) <= eps;
  };

  double lo = 0.0, hi = 1.0;
  if (ok(0.0)) return 0.0;
  while (!ok(hi) && hi < 2.0) hi *= 2.0;  // levy distance never exceeds 1
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    if (ok(mid))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

double tv_exact(const FiniteLaw& f, const FiniteLaw& g) {
  return l1_pmf_distance(f, g);
}

RhoReport rho_m(const Measure& f, const Measure& g, const std::vector<Polyhedron>& family) {
  if (family.empty()) throw Error(ErrorCode::EmptyFamily, "empty polyhedron family");
  RhoReport report;
  double best = -1.0;
  for (std::size_t i = 0; i < family.size(); ++i) {
    double v = std::abs(measure_prob(f, family[i], SetKind::ExactSet) -
                        measure_prob(g, family[i], SetKind::ExactSet));
    if (v > best) {
      best = v;
      report.witness_index = i;
    }
  }
  report.value = std::max(best, 0.0);
  return report;
}

DirectionalCdf::DirectionalCdf(const ConvolutionLaw& law, const Vec& direction, double tail_eps,
                               std::size_t atom_cap) {
  ProjectionMap map = ProjectionMap::build({direction}, MapKind::Coordinate);
  ConvolutionLaw line = pushforward(law, map);
  double gauss_mean = 0.0;
  if (auto gauss = combined_gaussian(line)) {
    gauss_mean = gauss->mean[0];
    sigma_ = std::sqrt(std::max(gauss->cov[0], 0.0));
  }
  FiniteLaw discrete = exact_pmf(without_gaussian(line), tail_eps, atom_cap);

  std::vector<std::pair<double, double>> entries;
  entries.reserve(discrete.size());
  for (std::size_t i = 0; i < discrete.size(); ++i)
    entries.emplace_back(discrete.atoms()[i][0] + gauss_mean, discrete.weights()[i]);
  std::sort(entries.begin(), entries.end());
  double acc = 0.0;
  for (const auto& [x, w] : entries) {
    positions_.push_back(x);
    weights_.push_back(w);
    acc += w;
    cumulative_.push_back(acc);
  }
}

double DirectionalCdf::cdf(double b) const {
  if (sigma_ <= 0.0) {
    auto it = std::upper_bound(positions_.begin(), positions_.end(), b);
    return it == positions_.begin()
               ? 0.0
               : cumulative_[static_cast<std::size_t>(it - positions_.begin()) - 1];
  }
  // atoms beyond 10 sigma of b contribute 1 or 0 up to < 1e-23; only the
  // band in between needs the normal cdf
  double band = 10.0 * sigma_;
  auto lo = std::lower_bound(positions_.begin(), positions_.end(), b - band);
  auto hi = std::upper_bound(positions_.begin(), positions_.end(), b + band);
  std::size_t lo_idx = static_cast<std::size_t>(lo - positions_.begin());
  double acc = lo_idx == 0 ? 0.0 : cumulative_[lo_idx - 1];
  for (auto it = lo; it != hi; ++it) {
    std::size_t i = static_cast<std::size_t>(it - positions_.begin());
    acc += weights_[i] * 0.5 * std::erfc(-(b - positions_[i]) / (sigma_ * std::sqrt(2.0)));
  }
  return acc;
}

double DirectionalCdf::cdf_left(double b) const {
  if (sigma_ > 0.0) return cdf(b);
  auto it = std::lower_bound(positions_.begin(), positions_.end(), b);
  return it == positions_.begin()
             ? 0.0
             : cumulative_[static_cast<std::size_t>(it - positions_.begin()) - 1];
}

double directional_discrepancy(const DirectionalCdf& a, const DirectionalCdf& b, double lambda) {
  double worst = 0.0;
  auto one_sided = [&](const DirectionalCdf& x, const DirectionalCdf& y) {
    auto consider = [&](double c) {
      worst = std::max(worst, x.cdf(c) - y.cdf(c + lambda));
      worst = std::max(worst, x.cdf_left(c) - y.cdf_left(c + lambda));
    };
    for (double p : x.positions()) consider(p);
    for (double p : y.positions()) {
      consider(p);
      consider(p - lambda);
    }
  };
  one_sided(a, b);
  one_sided(b, a);
  return std::max(worst, 0.0);
}

ExactDirectionalComparison::ExactDirectionalComparison(const ConvolutionLaw& g,
                                                       const ConvolutionLaw& h,
                                                       const std::vector<Vec>& directions,
                                                       double tail_eps) {
  if (directions.empty()) throw Error(ErrorCode::EmptyFamily, "no directions");
  for (const Vec& t : directions)
    cdfs_.emplace_back(DirectionalCdf(g, t, tail_eps), DirectionalCdf(h, t, tail_eps));
}

double ExactDirectionalComparison::profile(double lambda) const {
  double worst = 0.0;
  for (const auto& [a, b] : cdfs_)
    worst = std::max(worst, directional_discrepancy(a, b, lambda));
  return worst;
}

double ExactDirectionalComparison::metric(double tol) const {
  if (profile(0.0) <= 0.0) return 0.0;
  double lo = 0.0, hi = 1.0;
  while (profile(hi) > hi) hi *= 2.0;
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    if (profile(mid) <= mid)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

double exact_discrepancy_profile(const ConvolutionLaw& g, const ConvolutionLaw& h,
                                 const std::vector<Vec>& directions, double lambda,
                                 double tail_eps) {
  return ExactDirectionalComparison(g, h, directions, tail_eps).profile(lambda);
}

double exact_directional_metric(const ConvolutionLaw& g, const ConvolutionLaw& h,
                                const std::vector<Vec>& directions, double tol,
                                double tail_eps) {
  return ExactDirectionalComparison(g, h, directions, tail_eps).metric(tol);
}

}  // namespace accompany
