#pragma once

#include <cmath>
#include <complex>
#include <random>

#include "pointbeam/beam_model.hpp"

namespace testing {

using pointbeam::cplx;

inline const double kXi = 1.0 / std::sqrt(2.0);

// mu_n^{+/-} = (-b +/- sqrt(b^2 - 4 a n^4 pi^4)) / 2, long double arithmetic.
inline cplx closed_mu(double a, double b, int n, bool plus) {
  const long double k = n * 3.14159265358979323846264338327950288L;
  const long double disc = (long double)b * b - 4.0L * a * k * k * k * k;
  const long double s = std::sqrt(std::abs(disc));
  const long double sg = plus ? 1.0L : -1.0L;
  if (disc >= 0) return cplx(double((-b + sg * s) / 2), 0.0);
  return cplx(-b / 2.0, double(sg * s / 2));
}

inline double rel(cplx x, cplx y) { return std::abs(x - y) / std::max(1.0, std::abs(y)); }

// Raw characteristic function at an explicit lambda (any branch).
inline cplx char_oracle(double a, double b, double alpha, double xi, cplx mu, cplx l) {
  (void)a;
  const cplx eta = 1.0 - xi;
  return 2.0 * (mu + b) * std::sinh(l) * std::sin(l) +
         alpha * l * (std::sin(l) * std::sinh(l * xi) * std::sinh(l * eta) -
                      std::sinh(l) * std::sin(l * xi) * std::sin(l * eta));
}

inline std::mt19937_64& rng() {
  static std::mt19937_64 g(20261016);
  return g;
}

inline double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

}  // namespace testing
