// Copyright 2026 The pointbeam Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "pointbeam/beam_model.hpp"
#include "pointbeam/parallel.hpp"

namespace pointbeam {

// Fundamental kernel K(x) = (sinh(l x) - sin(l x)) / (2 a l^3) for x > 0, zero for x <= 0,
// and its x-derivatives up to order 4.  K(x) -> x^3/(6a) as l -> 0.
// Throws DegenerateLambda for l == 0.
cplx kernel_u0(cplx lambda, double x, double a = 1.0, int derivative = 0);

// (K^{(d)} * f)(x) = int_0^x K^{(d)}(x - s) f(s) ds for d <= 3, plus f(x)/a for d = 4.
// Simpson on the grid nodes below x plus the partial cell; half-grid Richardson check
// (GridTooCoarse when |I_h - I_2h|/15 > 1e-8 max(1, |I|)).
cplx convolve_u0(cplx lambda, const GridFunction& f, double x, double a = 1.0, int derivative = 0);

// Convolution at every grid node.  Table-driven OpenMP version and a direct serial
// reference; both perform the Richardson check.
std::vector<cplx> convolve_u0_grid(cplx lambda, const GridFunction& f, double a, int derivative,
                                   Exec exec = Exec::parallel);
std::vector<cplx> convolve_u0_grid_reference(cplx lambda, const GridFunction& f, double a,
                                             int derivative);

// 4 l^2 {[-2 l^3 sinh l - (alpha mu/a) sinh(l xi) sinh(l(xi-1))] sin l
//        + (alpha mu/a) sin(l xi) sinh l sin(l(xi-1))}
// All three products share the growth exp(|Re l| + |Im l|), returned as scale_log.
struct DetValue {
  cplx mantissa{};
  double scale_log = 0;
  double scale = 0;  // sum of term magnitudes, same exponent
  cplx value() const { return mantissa * std::exp(scale_log); }
  double normalized() const { return std::abs(mantissa) / scale; }
};

DetValue det_alpha(const BeamParams& p, cplx lambda, cplx mu);

struct ResolventInput {
  GridFunction u1;
  GridFunction v1;
  cplx mu{};
  std::optional<cplx> u1_at_xi;  // exact u1(xi) when known; interpolated otherwise
};

struct ResolventDiagnostics {
  double u_at_0 = 0, u_at_1 = 0;      // |u| / ||u||
  double u2_at_0 = 0, u2_at_1 = 0;    // |u''| / (||u|| L^2)
  double continuity2 = 0;             // |u''(xi+) - u''(xi-)| / (||u|| L^2)
  double jump = 0;                    // |[u'''] - g1| / max(|g1|, ||u|| L^3)
  double ode = 0;  // max |a u'''' + (b mu + mu^2) u - f10| / max(||f10||, a ||u|| L^4)
  double max() const;
};

struct ResolventOutput {
  GridFunction u;
  GridFunction v;  // mu u - u1
  cplx lambda{};
  cplx u_at_xi{};
  cplx p{}, q{}, jump_coefficient{};
  DetValue det;
  ResolventDiagnostics diagnostics;
};

// Solves (mu I - A) U = F.  With f10 = (mu + b) u1 + v1,
//   u = K * f10 + p K + q K'' + J K(. - xi),   J = alpha u1(xi) - (alpha mu + beta) u(xi),
// where (p, q, u(xi)) follow from u(1) = u''(1) = 0 and the point value by Cramer's rule.
// Throws AtEigenvalue when the 3x3 determinant is below 1e-12 of its Hadamard bound.
ResolventOutput resolvent_apply(const BeamParams& p, const ResolventInput& in,
                                Exec exec = Exec::parallel);

// Finite-difference verification of the boundary-value problem on the output grid, with
// stencils on every (M/128)-th node.  L = max(1, |lambda|).
ResolventDiagnostics resolvent_residual(const BeamParams& p, const ResolventInput& in,
                                        const ResolventOutput& out);

// Alternative explicit formula with the kernel (sin - sinh)/(2 a l^3)
// and the Delta coefficients.  Kept for comparison only.
GridFunction resolvent_apply_alt(const BeamParams& p, const ResolventInput& in);

// Chebyshev collocation solution of the same boundary-value problem on [0, xi] and [xi, 1].
struct CollocationSolution {
  double xi = 0.5;
  std::vector<double> left_nodes, right_nodes;
  std::vector<cplx> left, right;
  cplx operator()(double x) const;
};

CollocationSolution collocation_solve(const BeamParams& p, cplx mu,
                                      const std::function<cplx(double)>& f10, cplx u1_at_xi,
                                      int nodes_per_side = 28);

// max_j |u_j - collocation(x_j)| / ||u||.
double resolvent_crosscheck(const BeamParams& p, const ResolventInput& in,
                            const ResolventOutput& out, int nodes_per_side = 28);

}  // namespace pointbeam
