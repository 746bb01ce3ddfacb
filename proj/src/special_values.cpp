// Copyright 2026 The pointbeam Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <limits>

#include "pointbeam/spectrum.hpp"

namespace pointbeam {

AbscissaReport spectral_abscissa(const SpectrumResult& result) {
  if (result.eigenvalues.empty()) throw Error(ErrorCode::InvalidParams, "empty spectrum");
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& r : result.eigenvalues) m = std::max(m, r.point.mu.real());
  return {m, std::abs(m + result.params.b / 2) < 1e-6};
}

CriticalAlpha critical_alpha_double(double a, double b, double xi) {
  CriticalAlpha out;
  const double r = std::sqrt(std::sqrt(b * b / (4 * a)));
  out.r = r;
  const double eta = 1 - xi;
  const double num = -4 * a * r * r * r * std::sinh(r) * std::sin(r);
  const double bracket = std::sin(r) * std::sinh(r * xi) * std::sinh(r * eta) -
                         std::sinh(r) * std::sin(r * xi) * std::sin(r * eta);
  const double den = b * bracket;
  if (std::abs(den) < 1e-14 * b * std::sinh(r))
    throw Error(ErrorCode::DenominatorVanishes, "structurally degenerate damper location");
  out.alpha = num / den;
  out.degenerate = std::abs(std::sin(r)) < 1e-12;
  out.admissible = out.alpha > 0 && !out.degenerate;
  return out;
}

namespace {

// Roots in (0,1) of x(1-x) = c.
std::vector<double> quartic_roots(double c) {
  const double d = 1 - 4 * c;
  if (d < -1e-12) return {};
  if (std::abs(d) <= 1e-12) return {0.5};
  const double s = std::sqrt(d);
  return {(1 - s) / 2, (1 + s) / 2};
}

}  // namespace

XiReport xi_special_report(double a, double b, double alpha) {
  if (!(a > 0 && b > 0 && alpha > 0))
    throw Error(ErrorCode::InvalidParams, "xi_special_report needs a, b, alpha > 0");
  XiReport rep;
  rep.alpha_b = alpha * b;
  rep.roots = quartic_roots(std::sqrt(3 / (2 * rep.alpha_b)));
  rep.thresholds_disagree = rep.stated_threshold != rep.extremum_threshold;
  rep.limit_threshold = 48 * a;
  rep.limit_roots = quartic_roots(std::sqrt(3 * a / rep.alpha_b));
  return rep;
}

namespace {

double overdamped_root_gap(double a, double b, int n) {
  const double k = n * pi;
  const double disc = b * b - 4 * a * k * k * k * k;
  if (std::abs(disc) < 1e-8) throw Error(ErrorCode::NearDoubleRoot, "b = 2 sqrt(a) n^2 pi^2");
  if (disc < 0) throw Error(ErrorCode::InvalidParams, "beta shift needs n <= n0");
  return std::sqrt(disc);
}

}  // namespace

double beta_shift(double a, double b, double xi, double beta, int n, Sign s) {
  const double R = overdamped_root_gap(a, b, n);
  const double s2 = std::pow(std::sin(n * pi * xi), 2);
  return (s == Sign::plus ? -2.0 : 2.0) * s2 * beta / R;
}

double beta_shift_alt(double a, double b, double xi, double beta, int n, Sign s) {
  const double R = overdamped_root_gap(a, b, n);
  const double s2 = std::pow(std::sin(2 * n * pi * xi), 2);
  return (s == Sign::plus ? 2.0 : -2.0) * s2 * beta / R;
}

}  // namespace pointbeam
