// Copyright 2026 The pointbeam Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "pointbeam/beam_model.hpp"
#include "pointbeam/parallel.hpp"

namespace pointbeam {

struct EigenfunctionPair {
  GridFunction first;   // phi
  GridFunction second;  // mu * phi
  cplx mu{};
  cplx lambda{};
};

// Closed-form eigenfunction with the bounded prefactor e^{(xi-2)|l|}/|l|^2:
//   phi = sin l sinh l [sin(l(x-xi)) - sinh(l(x-xi))] H(x-xi)
//         + sin l sinh(l eta) sinh(l x) - sinh l sin(l eta) sin(l x),   eta = 1 - xi.
// Each product is accumulated in log-magnitude form.
class PhiEvaluator {
 public:
  PhiEvaluator(cplx lambda, double xi);
  cplx value(double x, int derivative = 0) const;  // derivative in {0,1,2,3,4}
  cplx value_left(double x, int derivative) const;   // Heaviside term dropped
  cplx value_right(double x, int derivative) const;  // Heaviside term kept
  cplx lambda() const { return lambda_; }

 private:
  cplx eval(double x, int derivative, bool heaviside) const;

  cplx lambda_;
  double xi_;
  double log_pref_;
};

// Throws ResidualTooLarge or DegenerateTrig.
EigenfunctionPair eval_phi(const BeamParams& p, const SpectralPoint& point, int grid_size);

// Psi_n = (1/(n pi)^2) e^{n pi (xi-2)} sinh(n pi) sin(n pi (1-xi)) sin(n pi x), times (1, mu_n^{+/-});
// the imaginary-lambda form carries an extra factor -i.
EigenfunctionPair eval_psi(int n, Sign s, const BeamParams& p, int grid_size,
                           bool imaginary_form = false);

struct EigenResiduals {
  double ode = 0;           // max |a phi'''' + (b mu + mu^2) phi| / max|phi| away from xi
  double boundary = 0;      // max of |phi|, |phi''| at 0 and 1, relative
  double continuity = 0;    // |phi(xi+) - phi(xi-)| and |phi''(xi+) - phi''(xi-)|, relative
  double jump = 0;          // |[phi'''] + (alpha/a) mu phi(xi)| / |(alpha/a) mu phi(xi)| (absolute if 0)
};

// ODE from finite differences on the pair's grid; boundary, continuity and the
// one-sided third derivatives at xi from the closed form.
EigenResiduals eigen_residuals(const BeamParams& p, const EigenfunctionPair& pair);

struct HnormDiff {
  double aligned = 0;     // min_c || c Phi - Psi/|Psi| ||_H^2
  double raw = 0;         // || Phi - Psi ||_H^2 with the closed-form prefactors
  double half_grid = 0;   // aligned value on the half grid
  cplx scale{};           // minimizing c
};

// Simpson split at xi, analytic second derivatives; GridTooCoarse when the half-grid
// value differs by more than 1%.
HnormDiff hnorm_diff(const BeamParams& p, const EigenRecord& rec, int grid_size = 1024);

struct RieszRow {
  int n = 0;
  cplx mu{};
  double aligned = 0;
  double raw = 0;
  double partial_sum = 0;
};

struct RieszReport {
  std::vector<RieszRow> rows;
  double exponent = 0;      // fit of log(aligned / sin^2(n pi xi)) against log n
  double raw_exponent = 0;  // fit of log(aligned) against log n
  double tail_fraction = 0; // fitted tail beyond n_max relative to the total
  bool trivial = false;     // all entries <= 1e-10
  bool consistent = false;  // exponent <= -1.5 (or trivial)
};

RieszReport riesz_tail_report(const BeamParams& p, int n0, int n_max, int grid_size = 1024,
                              Exec exec = Exec::parallel);

// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace pointbeam
