// Copyright 2026 The pointbeam Authors
// SPDX-License-Identifier: Apache-2.0

#include "pointbeam/beam_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace pointbeam {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::InvalidParams, what);
}

}  // namespace

void validate(const BeamParams& p) {
  require(std::isfinite(p.a) && p.a > 0, "a must be > 0");
  require(std::isfinite(p.b) && p.b > 0, "b must be > 0");
  require(std::isfinite(p.alpha) && p.alpha >= 0, "alpha must be >= 0");
  require(std::isfinite(p.beta) && p.beta >= 0, "beta must be >= 0");
  require(std::isfinite(p.xi) && p.xi > 0 && p.xi < 1, "xi must lie in (0,1)");
}

BeamParams make_params(double a, double b, double alpha, double beta, double xi) {
  BeamParams p{a, b, alpha, beta, xi, false};
  validate(p);
  p.xi_is_rational_guard = rational_approximation(xi).has_value();
  return p;
}

std::optional<std::pair<long, long>> rational_approximation(double x, int qmax, double tol) {
  long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double r = x;
  for (int it = 0; it < 64; ++it) {
    const double fl = std::floor(r);
    const long k = static_cast<long>(fl);
    const long p2 = k * p1 + p0;
    const long q2 = k * q1 + q0;
    if (q2 > qmax) break;
    if (std::abs(x - static_cast<double>(p2) / q2) <= tol) return std::make_pair(p2, q2);
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    const double frac = r - fl;
    if (frac < 1e-300) break;
    r = 1.0 / frac;
  }
  return std::nullopt;
}

const char* to_string(Sign s) { return s == Sign::plus ? "+" : "-"; }

const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::closed_form: return "closed-form";
    case Provenance::perturbative: return "perturbative";
    case Provenance::contour: return "contour";
    case Provenance::tracked: return "tracked";
    case Provenance::oracle: return "oracle";
  }
  return "unknown";
}

GridFunction::GridFunction(int m, int marked_node)
    : samples(static_cast<std::size_t>(m) + 1), M(m), marked(marked_node) {
  require(m >= 8, "grid needs M >= 8");
}

GridFunction GridFunction::sample(int m, const std::function<cplx(double)>& f, int marked_node) {
  GridFunction g(m, marked_node);
  for (int j = 0; j <= m; ++j) g.samples[j] = f(g.x(j));
  return g;
}

double GridFunction::max_abs() const {
  double m = 0;
  for (const auto& v : samples) m = std::max(m, std::abs(v));
  return m;
}

int nearest_node(int M, double xi) {
  const int j = static_cast<int>(std::lround(xi * M));
  return std::clamp(j, 1, M - 1);
}

cplx principal_fourth_root(cplx w) {
  const double r = std::abs(w);
  if (r == 0) return 0.0;
  double th = std::arg(w);
  if (th >= pi) th = -pi;
  return std::polar(std::sqrt(std::sqrt(r)), th / 4);
}

cplx apply_branch(cplx lambda, Branch br) {
  switch (br) {
    case Branch::principal: return lambda;
    case Branch::times_i: return cplx(-lambda.imag(), lambda.real());
    case Branch::negated: return -lambda;
    case Branch::times_minus_i: return cplx(lambda.imag(), -lambda.real());
  }
  return lambda;
}

SpectralPoint lambda_from_mu(const BeamParams& p, cplx mu) {
  SpectralPoint sp;
  sp.mu = mu;
  const cplx q = p.b * mu + mu * mu;
  if (std::abs(q) < 1e-300) {
    sp.degenerate = true;
    sp.lambda = 0.0;
    return sp;
  }
  sp.lambda = principal_fourth_root(-q / p.a);
  return sp;
}

std::pair<cplx, cplx> mu_from_lambda(const BeamParams& p, cplx lambda) {
  const cplx l2 = lambda * lambda;
  const cplx al4 = p.a * l2 * l2;
  cplx disc = p.b * p.b - 4.0 * al4;
  // Roundoff in lambda^4 must not pick the branch on the negative real axis.
  if (std::abs(disc.imag()) <= 1e-14 * std::abs(disc)) disc = cplx(disc.real(), 0.0);
  const cplx delta = std::sqrt(disc);
  // Re(delta) >= 0 so -(b + delta) never cancels.
  const cplx mu_minus = -(p.b + delta) / 2.0;
  const cplx mu_plus = al4 / mu_minus;
  return {mu_plus, mu_minus};
}

cplx closed_form_mu(double a, double b, int n, Sign s) {
  const double k = n * pi;
  const double ak4 = a * k * k * k * k;
  const double disc = b * b - 4 * ak4;
  if (disc >= 0) {
    const double R = std::sqrt(disc);
    return s == Sign::plus ? cplx(-2 * ak4 / (b + R), 0.0) : cplx(-(b + R) / 2, 0.0);
  }
  const double w = std::sqrt(-disc) / 2;
  return {-b / 2, s == Sign::plus ? w : -w};
}

int overdamped_count(double a, double b) {
  int n = 0;
  while (2 * std::sqrt(a) * (n + 1) * (n + 1) * pi * pi < b) ++n;
  return n;
}

}  // namespace pointbeam
