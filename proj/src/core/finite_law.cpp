#include "finite_law.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"

namespace accompany {

std::vector<std::int64_t> atom_key(const Vec& x) {
  std::vector<std::int64_t> key(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    key[i] = static_cast<std::int64_t>(std::llround(x[i] * 1e12));
  return key;
}

FiniteLaw::FiniteLaw(std::size_t dim, std::vector<Vec> atoms, std::vector<double> weights,
                     double mass_deficit_tol)
    : dim_(dim) {
  if (atoms.size() != weights.size())
    throw Error(ErrorCode::InvalidArgument, "atoms/weights length mismatch");
  if (atoms.empty())
    throw Error(ErrorCode::InvalidArgument, "finite law needs at least one atom");
  for (const Vec& a : atoms)
    if (a.size() != dim)
      throw Error(ErrorCode::DimensionMismatch, "atom dimension mismatch");

  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (!(weights[i] >= 0.0) || !std::isfinite(weights[i]))
      throw Error(ErrorCode::WeightViolation, "negative or non-finite weight");
    auto key = atom_key(atoms[i]);
    auto it = index_.find(key);
    if (it == index_.end()) {
      index_.emplace(std::move(key), atoms_.size());
      atoms_.push_back(std::move(atoms[i]));
      weights_.push_back(weights[i]);
    } else {
      weights_[it->second] += weights[i];
    }
  }

  total_mass_ = 0.0;
  for (double w : weights_) total_mass_ += w;
  if (total_mass_ > 1.0 + 1e-12 || total_mass_ < 1.0 - mass_deficit_tol - 1e-12)
    throw Error(ErrorCode::WeightViolation,
                "weights sum to " + std::to_string(total_mass_));

  cumulative_.resize(weights_.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    acc += weights_[i];
    cumulative_[i] = acc;
  }
  cumulative_.back() = std::max(cumulative_.back(), 1.0);
}

FiniteLaw FiniteLaw::point_mass(Vec x) {
  std::size_t d = x.size();
  return FiniteLaw(d, {std::move(x)}, {1.0});
}

Vec FiniteLaw::mean() const {
  Vec m(dim_, 0.0);
  for (std::size_t i = 0; i < atoms_.size(); ++i) axpy(weights_[i], atoms_[i], m);
  return m;
}

Mat FiniteLaw::second_moment() const {
  Mat s = zeros(dim_);
  for (std::size_t i = 0; i < atoms_.size(); ++i)
    add_outer(s, dim_, weights_[i], atoms_[i]);
  return s;
}

Mat FiniteLaw::covariance() const {
  Mat s = second_moment();
  Vec m = mean();
  add_outer(s, dim_, -1.0, m);
  return s;
}

Vec FiniteLaw::sample(RngStream& rng) const {
  return atoms_[rng.categorical(cumulative_)];
}

double FiniteLaw::pmf_at(const Vec& x) const {
  auto it = index_.find(atom_key(x));
  return it == index_.end() ? 0.0 : weights_[it->second];
}

FiniteLaw mix(const FiniteLaw& u, const FiniteLaw& v, double p) {
  if (u.dim() != v.dim())
    throw Error(ErrorCode::DimensionMismatch, "mixture dimension mismatch");
  std::vector<Vec> atoms;
  std::vector<double> weights;
  for (std::size_t i = 0; i < u.size(); ++i) {
    atoms.push_back(u.atoms()[i]);
    weights.push_back((1.0 - p) * u.weights()[i]);
  }
  for (std::size_t i = 0; i < v.size(); ++i) {
    atoms.push_back(v.atoms()[i]);
    weights.push_back(p * v.weights()[i]);
  }
  double deficit = std::max(1.0 - (1.0 - p) * u.total_mass() - p * v.total_mass(), 0.0);
  return FiniteLaw(u.dim(), std::move(atoms), std::move(weights), deficit + 1e-12);
}

FiniteLaw convolve(const FiniteLaw& a, const FiniteLaw& b, std::size_t atom_cap) {
  if (a.dim() != b.dim())
    throw Error(ErrorCode::DimensionMismatch, "convolution dimension mismatch");
  if (a.size() * b.size() > atom_cap * 4)
    throw Error(ErrorCode::SupportExplosion, "convolution support too large");
  std::vector<Vec> atoms;
  std::vector<double> weights;
  atoms.reserve(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      atoms.push_back(add(a.atoms()[i], b.atoms()[j]));
      weights.push_back(a.weights()[i] * b.weights()[j]);
    }
  }
  double deficit = std::max(1.0 - a.total_mass() * b.total_mass(), 0.0);
  FiniteLaw out(a.dim(), std::move(atoms), std::move(weights), deficit + 1e-12);
  if (out.size() > atom_cap)
    throw Error(ErrorCode::SupportExplosion, "convolution support exceeds atom cap");
  return out;
}

FiniteLaw shift(const FiniteLaw& a, const Vec& offset) {
  if (offset.size() != a.dim())
    throw Error(ErrorCode::DimensionMismatch, "shift dimension mismatch");
  std::vector<Vec> atoms;
  for (const Vec& x : a.atoms()) atoms.push_back(add(x, offset));
  double deficit = std::max(1.0 - a.total_mass(), 0.0);
  return FiniteLaw(a.dim(), std::move(atoms), a.weights(), deficit + 1e-12);
}

std::size_t poisson_truncation(double rate, double tail_eps) {
  // direct tail summation; smallest K with P(N > K) <= tail_eps
  double pmf = std::exp(-rate);
  double cdf = pmf;
  std::size_t k = 0;
  while (1.0 - cdf > tail_eps) {
    ++k;
    pmf *= rate / static_cast<double>(k);
    cdf += pmf;
    if (k > 100000)
      throw Error(ErrorCode::InvalidArgument, "poisson truncation did not converge");
  }
  return k;
}

FiniteLaw compound_poisson_pmf(const FiniteLaw& base, double rate, double tail_eps,
                               std::size_t atom_cap) {
  std::size_t trunc = poisson_truncation(rate, tail_eps);
  std::vector<Vec> atoms;
  std::vector<double> weights;

  double pmf = std::exp(-rate);  // P(N = 0)
  atoms.push_back(Vec(base.dim(), 0.0));
  weights.push_back(pmf);

  FiniteLaw power = FiniteLaw::point_mass(Vec(base.dim(), 0.0));  // base^{*k}
  for (std::size_t k = 1; k <= trunc; ++k) {
    power = convolve(power, base, atom_cap);
    pmf *= rate / static_cast<double>(k);
    for (std::size_t i = 0; i < power.size(); ++i) {
      atoms.push_back(power.atoms()[i]);
      weights.push_back(pmf * power.weights()[i]);
    }
    if (atoms.size() > atom_cap)
      throw Error(ErrorCode::SupportExplosion, "compound poisson support exceeds cap");
  }
  return FiniteLaw(base.dim(), std::move(atoms), std::move(weights), tail_eps + 1e-12);
}

namespace {

struct SignedAtom {
  const Vec* x;
  double wa;
  double wb;
};

// cluster atoms from both laws by lexicographic sort + per-coordinate
// tolerance, then hand per-cluster (wa, wb) pairs to the reducer
template <typename F>
void for_each_matched_cluster(const FiniteLaw& a, const FiniteLaw& b, double tol, F&& f) {
  std::vector<SignedAtom> all;
  all.reserve(a.size() + b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    all.push_back({&a.atoms()[i], a.weights()[i], 0.0});
  for (std::size_t i = 0; i < b.size(); ++i)
    all.push_back({&b.atoms()[i], 0.0, b.weights()[i]});
  std::sort(all.begin(), all.end(), [](const SignedAtom& l, const SignedAtom& r) {
    return *l.x < *r.x;
  });

  std::size_t i = 0;
  while (i < all.size()) {
    const Vec& rep = *all[i].x;
    double wa = all[i].wa, wb = all[i].wb;
    std::size_t j = i + 1;
    while (j < all.size()) {
      bool close = true;
      for (std::size_t c = 0; c < rep.size(); ++c)
        if (std::abs((*all[j].x)[c] - rep[c]) > tol) { close = false; break; }
      if (!close) break;
      wa += all[j].wa;
      wb += all[j].wb;
      ++j;
    }
    f(wa, wb);
    i = j;
  }
}

}  // namespace

double max_pmf_deviation(const FiniteLaw& a, const FiniteLaw& b, double match_tol) {
  if (a.dim() != b.dim())
    throw Error(ErrorCode::DimensionMismatch, "pmf comparison dimension mismatch");
  double worst = 0.0;
  for_each_matched_cluster(a, b, match_tol, [&](double wa, double wb) {
    worst = std::max(worst, std::abs(wa - wb));
  });
  return worst;
}

double l1_pmf_distance(const FiniteLaw& a, const FiniteLaw& b, double match_tol) {
  if (a.dim() != b.dim())
    throw Error(ErrorCode::DimensionMismatch, "pmf comparison dimension mismatch");
  double total = 0.0;
  for_each_matched_cluster(a, b, match_tol, [&](double wa, double wb) {
    total += std::abs(wa - wb);
  });
  return 0.5 * total;
}

}  // namespace accompany
