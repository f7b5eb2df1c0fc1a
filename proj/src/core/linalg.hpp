#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "errors.hpp"

// Small dense helpers for the low dimensions this library works in.
// Vectors are std::vector<double>; matrices are row-major with an explicit
// dimension carried by the caller.

namespace accompany {

using Vec = std::vector<double>;
using Mat = std::vector<double>;  // row-major d x d

inline double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

inline Vec add(const Vec& a, const Vec& b) {
  Vec r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

inline Vec sub(const Vec& a, const Vec& b) {
  Vec r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

inline Vec scale(const Vec& a, double s) {
  Vec r(a);
  for (double& x : r) x *= s;
  return r;
}

inline void axpy(double alpha, const Vec& x, Vec& y) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += alpha * x[i];
}

inline Mat zeros(std::size_t d) { return Mat(d * d, 0.0); }

inline Mat identity(std::size_t d) {
  Mat m = zeros(d);
  for (std::size_t i = 0; i < d; ++i) m[i * d + i] = 1.0;
  return m;
}

// rank-1 update: M += alpha * x x^T
inline void add_outer(Mat& m, std::size_t d, double alpha, const Vec& x) {
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m[i * d + j] += alpha * x[i] * x[j];
}

inline double max_abs_asymmetry(const Mat& m, std::size_t d) {
  double worst = 0.0;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      worst = std::max(worst, std::abs(m[i * d + j] - m[j * d + i]));
  return worst;
}

// Cholesky factor of a symmetric PSD matrix, tolerating semidefiniteness.
// Returns lower-triangular L with L L^T ~= m; throws NonPSDCovariance if a
// pivot is negative beyond tol.
inline Mat cholesky_psd(const Mat& m, std::size_t d, double tol = 1e-9) {
  Mat L = zeros(d);
  for (std::size_t j = 0; j < d; ++j) {
    double diag = m[j * d + j];
    for (std::size_t k = 0; k < j; ++k) diag -= L[j * d + k] * L[j * d + k];
    if (diag < -tol)
      throw Error(ErrorCode::NonPSDCovariance,
                  "covariance has negative pivot " + std::to_string(diag));
    if (diag <= tol) {
      // semidefinite direction: zero column
      continue;
    }
    double ljj = std::sqrt(diag);
    L[j * d + j] = ljj;
    for (std::size_t i = j + 1; i < d; ++i) {
      double s = m[i * d + j];
      for (std::size_t k = 0; k < j; ++k) s -= L[i * d + k] * L[j * d + k];
      L[i * d + j] = s / ljj;
    }
  }
  return L;
}

// y = M x for row-major d x d
inline Vec matvec(const Mat& m, std::size_t d, const Vec& x) {
  Vec y(d, 0.0);
  for (std::size_t i = 0; i < d; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < d; ++j) s += m[i * d + j] * x[j];
    y[i] = s;
  }
  return y;
}

}  // namespace accompany
