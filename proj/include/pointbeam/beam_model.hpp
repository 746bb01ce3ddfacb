// Copyright 2026 The pointbeam Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "pointbeam/errors.hpp"

namespace pointbeam {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;

// Coefficients of a u'''' + b u_t + u_tt + (alpha u_t(xi) + beta u(xi)) delta_xi = 0.
struct BeamParams {
  double a = 1.0;
  double b = 1.0;
  double alpha = 0.0;
  double beta = 0.0;
  double xi = 0.70710678118654752440;
  bool xi_is_rational_guard = false;
};

// Validates and fills the rationality guard. Throws InvalidParams.
BeamParams make_params(double a, double b, double alpha, double beta, double xi);
void validate(const BeamParams& p);

// Best p/q with q <= qmax within tol of x, found from the continued fraction.
std::optional<std::pair<long, long>> rational_approximation(double x, int qmax = 64,
                                                            double tol = 1e-12);

enum class Branch { principal, times_i, negated, times_minus_i };

struct SpectralPoint {
  cplx mu{};
  cplx lambda{};
  Branch branch = Branch::principal;
  double residual = 0.0;
  bool degenerate = false;  // lambda == 0, i.e. mu in {0, -b}
};

enum class Sign { plus, minus };
enum class Provenance { closed_form, perturbative, contour, tracked, oracle };

const char* to_string(Sign s);
const char* to_string(Provenance p);

struct EigenRecord {
  SpectralPoint point;
  int n = 1;
  Sign sign = Sign::plus;
  int alg_mult_estimate = 1;
  Provenance provenance = Provenance::closed_form;
};

// Samples on x_j = j / M, j = 0..M.
struct GridFunction {
  std::vector<cplx> samples;
  int M = 0;
  int marked = -1;  // node nearest to xi, if any

  GridFunction() = default;
  explicit GridFunction(int m, int marked_node = -1);

  double h() const { return 1.0 / M; }
  double x(int j) const { return static_cast<double>(j) / M; }
  std::size_t size() const { return samples.size(); }
  cplx& operator[](std::size_t j) { return samples[j]; }
  const cplx& operator[](std::size_t j) const { return samples[j]; }

  static GridFunction sample(int m, const std::function<cplx(double)>& f,
                             int marked_node = -1);
  double max_abs() const;
};

int nearest_node(int M, double xi);

// arg(lambda) in [-pi/4, pi/4).
cplx principal_fourth_root(cplx w);
cplx apply_branch(cplx lambda, Branch br);

SpectralPoint lambda_from_mu(const BeamParams& p, cplx mu);

// Roots of mu^2 + b mu + a lambda^4 = 0 as (mu_plus, mu_minus), mu_plus = (-b + delta)/2.
std::pair<cplx, cplx> mu_from_lambda(const BeamParams& p, cplx lambda);

// Closed form of the undamped eigenvalues mu_n^{+/-}.
cplx closed_form_mu(double a, double b, int n, Sign s);

// Largest n with 2 sqrt(a) n^2 pi^2 < b (0 if none).
int overdamped_count(double a, double b);

}  // namespace pointbeam
