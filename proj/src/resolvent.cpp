// Copyright 2026 The pointbeam Authors
// SPDX-License-Identifier: Apache-2.0

#include "pointbeam/resolvent.hpp"

#include <algorithm>
#include <cmath>

#include "pointbeam/quadrature.hpp"
#include "pointbeam/scaled_trig.hpp"

namespace pointbeam {

namespace {

cplx kernel_raw(cplx l, double x, double a, int d) {
  if (x <= 0) return 0;
  const cplx z = l * x;
  if (std::abs(z) < 1) {
    // sum_k l^{4k} x^{4k+3-d} / (4k+3-d)!
    const cplx l4 = l * l * l * l;
    cplx s = 0, lk = 1;
    for (int k = 0; k < 30; ++k) {
      const int e = 4 * k + 3 - d;
      if (e >= 0) {
        const cplx term = lk * std::pow(x, e) / std::tgamma(e + 1.0);
        s += term;
        if (std::abs(term) < 1e-18 * std::abs(s)) break;
      }
      lk *= l4;
    }
    return s / a;
  }
  cplx sh = d % 2 == 0 ? std::sinh(z) : std::cosh(z);
  cplx sn;
  switch (d % 4) {
    case 0: sn = std::sin(z); break;
    case 1: sn = std::cos(z); break;
    case 2: sn = -std::sin(z); break;
    default: sn = -std::cos(z); break;
  }
  return std::pow(l, d - 3) * (sh - sn) / (2 * a);
}

void check_lambda(cplx l) {
  if (l == cplx(0)) throw Error(ErrorCode::DegenerateLambda, "lambda = 0");
}

GridFunction half_grid(const GridFunction& f) {
  if (f.M % 2 != 0 || f.M < 16)
    throw Error(ErrorCode::GridTooCoarse, "Richardson check needs an even grid with M >= 16");
  GridFunction g(f.M / 2);
  for (int i = 0; i <= g.M; ++i) g[i] = f[2 * i];
  return g;
}

cplx convolve_once(cplx l, const GridFunction& f, double x, double a, int d) {
  const double h = f.h();
  int j0 = static_cast<int>(std::floor(x * f.M + 1e-12));
  j0 = std::clamp(j0, 0, f.M);
  std::vector<cplx> g(j0 + 1);
  for (int i = 0; i <= j0; ++i) g[i] = kernel_raw(l, x - f.x(i), a, d) * f[i];
  cplx s = simpson(g.data(), j0, h);
  const double delta = x - f.x(j0);
  if (delta > 1e-14) {
    const double m = f.x(j0) + delta / 2;
    const cplx gm = kernel_raw(l, x - m, a, d) * interpolate(f, m);
    const cplx ge = d == 3 ? interpolate(f, x) / a : cplx(0);
    s += delta / 6 * (g[j0] + 4.0 * gm + ge);
  }
  if (d == 4) s += interpolate(f, x) / a;
  return s;
}

bool richardson_fails(cplx fine, cplx coarse, double ref) {
  return std::abs(fine - coarse) / 15 > 1e-8 * std::max(1.0, ref);
}

std::vector<cplx> grid_conv_table(cplx l, const GridFunction& f, double a, int d, Exec exec) {
  const int M = f.M;
  std::vector<cplx> table(M + 1);
  for (int k = 0; k <= M; ++k) table[k] = kernel_raw(l, f.x(k), a, d);
  std::vector<cplx> out(M + 1);
  for_each_index(exec, M + 1, [&](std::ptrdiff_t j) {
    std::vector<cplx> g(j + 1);
    for (std::ptrdiff_t i = 0; i <= j; ++i) g[i] = table[j - i] * f[i];
    out[j] = simpson(g.data(), static_cast<int>(j), f.h());
    if (d == 4) out[j] += f[j] / a;
  });
  return out;
}

std::vector<cplx> grid_conv_direct(cplx l, const GridFunction& f, double a, int d) {
  const int M = f.M;
  std::vector<cplx> out(M + 1);
  for (int j = 0; j <= M; ++j) {
    std::vector<cplx> g(j + 1);
    for (int i = 0; i <= j; ++i) g[i] = kernel_raw(l, f.x(j) - f.x(i), a, d) * f[i];
    out[j] = simpson(g.data(), j, f.h());
    if (d == 4) out[j] += f[j] / a;
  }
  return out;
}

void check_grid(const std::vector<cplx>& fine, const std::vector<cplx>& coarse) {
  double ref = 0;
  for (const auto& v : fine) ref = std::max(ref, std::abs(v));
  for (std::size_t i = 0; i < coarse.size(); ++i)
    if (richardson_fails(fine[2 * i], coarse[i], ref))
      throw Error(ErrorCode::GridTooCoarse, "convolution changes under grid halving");
}

cplx det3(const cplx m[3][3]) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

}  // namespace

cplx kernel_u0(cplx lambda, double x, double a, int derivative) {
  check_lambda(lambda);
  if (derivative < 0 || derivative > 4) throw Error(ErrorCode::InvalidParams, "derivative in 0..4");
  return kernel_raw(lambda, x, a, derivative);
}

cplx convolve_u0(cplx lambda, const GridFunction& f, double x, double a, int derivative) {
  check_lambda(lambda);
  if (!(x >= 0 && x <= 1)) throw Error(ErrorCode::InvalidParams, "x must lie in [0,1]");
  if (derivative < 0 || derivative > 4) throw Error(ErrorCode::InvalidParams, "derivative in 0..4");
  const cplx fine = convolve_once(lambda, f, x, a, derivative);
  const cplx coarse = convolve_once(lambda, half_grid(f), x, a, derivative);
  if (richardson_fails(fine, coarse, std::abs(fine)))
    throw Error(ErrorCode::GridTooCoarse, "convolution changes under grid halving");
  return fine;
}

std::vector<cplx> convolve_u0_grid(cplx lambda, const GridFunction& f, double a, int derivative,
                                   Exec exec) {
  check_lambda(lambda);
  const auto fine = grid_conv_table(lambda, f, a, derivative, exec);
  check_grid(fine, grid_conv_table(lambda, half_grid(f), a, derivative, exec));
  return fine;
}

std::vector<cplx> convolve_u0_grid_reference(cplx lambda, const GridFunction& f, double a,
                                             int derivative) {
  check_lambda(lambda);
  const auto fine = grid_conv_direct(lambda, f, a, derivative);
  check_grid(fine, grid_conv_direct(lambda, half_grid(f), a, derivative));
  return fine;
}

DetValue det_alpha(const BeamParams& p, cplx l, cplx mu) {
  check_lambda(l);
  const double xi = p.xi;
  const cplx c = p.alpha * mu / p.a;
  // Stripped mantissas: sin z e^{-|Im z|}, sinh z e^{-|Re z|}.
  const cplx s1 = stripped_sin_cos(l).s, sh1 = stripped_sinh_cosh(l).sh;
  const cplx sxi = stripped_sin_cos(l * xi).s, shxi = stripped_sinh_cosh(l * xi).sh;
  const cplx sxm = stripped_sin_cos(l * (xi - 1)).s, shxm = stripped_sinh_cosh(l * (xi - 1)).sh;
  const cplx t1 = -2.0 * l * l * l * sh1 * s1;
  const cplx t2 = -c * shxi * shxm * s1;
  const cplx t3 = c * sxi * sh1 * sxm;
  DetValue d;
  const cplx l2 = 4.0 * l * l;
  d.mantissa = l2 * (t1 + t2 + t3);
  d.scale_log = std::abs(l.real()) + std::abs(l.imag());
  d.scale = std::abs(l2) * (std::abs(2.0 * l * l * l) + 2 * std::abs(c));
  return d;
}

double ResolventDiagnostics::max() const {
  return std::max({u_at_0, u_at_1, u2_at_0, u2_at_1, continuity2, jump, ode});
}

namespace {

GridFunction make_f10(const BeamParams& p, const ResolventInput& in) {
  if (in.u1.M != in.v1.M) throw Error(ErrorCode::InvalidParams, "u1 and v1 grids differ");
  GridFunction f(in.u1.M, in.u1.marked);
  for (int j = 0; j <= f.M; ++j) f[j] = (in.mu + p.b) * in.u1[j] + in.v1[j];
  return f;
}

cplx u1_value(const ResolventInput& in, double xi) {
  return in.u1_at_xi ? *in.u1_at_xi : interpolate(in.u1, xi);
}

}  // namespace

ResolventOutput resolvent_apply(const BeamParams& p, const ResolventInput& in, Exec exec) {
  validate(p);
  const auto sp = lambda_from_mu(p, in.mu);
  const cplx l = sp.lambda;
  check_lambda(l);
  if (std::abs(l.real()) + std::abs(l.imag()) > 600)
    throw Error(ErrorCode::InvalidParams, "|lambda| too large for the kernel representation");
  const double a = p.a, xi = p.xi;
  const GridFunction f = make_f10(p, in);
  const auto conv0 = convolve_u0_grid(l, f, a, 0, exec);
  const auto conv2 = convolve_u0_grid(l, f, a, 2, exec);
  const cplx cxi = convolve_u0(l, f, xi, a, 0);
  const cplx u1x = u1_value(in, xi);
  const cplx gamma = p.alpha * in.mu + p.beta;
  const int M = f.M;

  const cplx K1 = kernel_raw(l, 1, a, 0), K1b = kernel_raw(l, 1, a, 2), K1c = kernel_raw(l, 1, a, 4);
  const cplx Ke = kernel_raw(l, 1 - xi, a, 0), Keb = kernel_raw(l, 1 - xi, a, 2);
  const cplx Kx = kernel_raw(l, xi, a, 0), Kxb = kernel_raw(l, xi, a, 2);
  const cplx m[3][3] = {{K1, K1b, -gamma * Ke}, {K1b, K1c, -gamma * Keb}, {Kx, Kxb, -1.0}};
  const cplx r[3] = {-conv0[M] - p.alpha * u1x * Ke, -conv2[M] - p.alpha * u1x * Keb, -cxi};
  const cplx det = det3(m);
  double hadamard = 1;
  for (const auto& row : m)
    hadamard *= std::sqrt(std::norm(row[0]) + std::norm(row[1]) + std::norm(row[2]));
  if (std::abs(det) < 1e-12 * hadamard)
    throw Error(ErrorCode::AtEigenvalue, "mu is an eigenvalue to working precision");
  cplx sol[3];
  for (int k = 0; k < 3; ++k) {
    cplx mk[3][3];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) mk[i][j] = j == k ? r[i] : m[i][j];
    sol[k] = det3(mk) / det;
  }

  ResolventOutput out;
  out.lambda = l;
  out.p = sol[0];
  out.q = sol[1];
  out.u_at_xi = sol[2];
  out.jump_coefficient = p.alpha * u1x - gamma * sol[2];
  out.det = det_alpha(p, l, in.mu);
  out.u = GridFunction(M, in.u1.marked);
  out.v = GridFunction(M, in.u1.marked);
  for (int j = 0; j <= M; ++j) {
    const double x = f.x(j);
    out.u[j] = conv0[j] + out.p * kernel_raw(l, x, a, 0) + out.q * kernel_raw(l, x, a, 2) +
               out.jump_coefficient * kernel_raw(l, x - xi, a, 0);
    out.v[j] = in.mu * out.u[j] - in.u1[j];
  }
  out.diagnostics = resolvent_residual(p, in, out);
  return out;
}

ResolventDiagnostics resolvent_residual(const BeamParams& p, const ResolventInput& in,
                                        const ResolventOutput& out) {
  ResolventDiagnostics d;
  const auto& u = out.u;
  const double nu = u.max_abs();
  if (nu == 0) return d;
  const double L = std::max(1.0, std::abs(out.lambda));
  const double xi = p.xi;
  const int st = std::max(1, u.M / 128);
  auto deriv = [&](double x, int order, int count, int side) {
    return grid_derivative(u, x, order, count, side, st);
  };
  d.u_at_0 = std::abs(u[0]) / nu;
  d.u_at_1 = std::abs(u[u.M]) / nu;
  d.u2_at_0 = std::abs(deriv(0.0, 2, 7, +1)) / (nu * L * L);
  d.u2_at_1 = std::abs(deriv(1.0, 2, 7, -1)) / (nu * L * L);
  d.continuity2 = std::abs(deriv(xi, 2, 7, +1) - deriv(xi, 2, 7, -1)) / (nu * L * L);
  const cplx uxi = deriv(xi, 0, 7, -1);
  const cplx g1 = (p.alpha * u1_value(in, xi) - (p.alpha * in.mu + p.beta) * uxi) / p.a;
  const cplx jump = deriv(xi, 3, 8, +1) - deriv(xi, 3, 8, -1);
  d.jump = std::abs(jump - g1) / std::max(std::abs(g1), nu * L * L * L);

  const GridFunction f = make_f10(p, in);
  const double fn = f.max_abs();
  const int half = 4;
  std::vector<double> off(2 * half + 1);
  for (int i = 0; i <= 2 * half; ++i) off[i] = (i - half) * st * u.h();
  const auto w4 = fd_weights(0.0, off, 4);
  const cplx k = p.b * in.mu + in.mu * in.mu;
  const double denom = std::max(fn, p.a * nu * std::pow(L, 4));
  for (int j = half * st; j + half * st <= u.M; ++j) {
    if (u.x(j - half * st) < xi && u.x(j + half * st) > xi) continue;
    cplx d4 = 0;
    for (int i = 0; i <= 2 * half; ++i) d4 += w4[i] * u[j + (i - half) * st];
    d.ode = std::max(d.ode, std::abs(p.a * d4 + k * u[j] - f[j]) / denom);
  }
  return d;
}

GridFunction resolvent_apply_alt(const BeamParams& p, const ResolventInput& in) {
  validate(p);
  const cplx l = lambda_from_mu(p, in.mu).lambda;
  check_lambda(l);
  const double a = p.a, xi = p.xi, al = p.alpha;
  const cplx mu = in.mu;
  const GridFunction f = make_f10(p, in);
  const int M = f.M;
  // The kernel (sin - sinh)/(2 a l^3) used here is the negative of K.
  auto u0 = [&](double x) { return -kernel_raw(l, x, a, 0); };
  auto u0xx = [&](double x) { return -kernel_raw(l, x, a, 2); };
  auto conv = convolve_u0_grid(l, f, a, 0);
  for (auto& c : conv) c = -c;
  const cplx conv1xx = -convolve_u0_grid(l, f, a, 2)[M];
  const cplx convxi = -convolve_u0(l, f, xi, a, 0);
  const cplx u1x = u1_value(in, xi);

  const cplx l2 = l * l, l3 = l2 * l;
  const cplx A = l2 * conv[M] + 2.0 * l2 * al * u1x * u0(1 - xi);
  const cplx B = conv1xx + 2.0 * al * u1x * u0xx(1 - xi);
  const cplx C = l2 * convxi;
  const cplx s = std::sin(l), sh = std::sinh(l);
  const cplx sx = std::sin(l * xi), shx = std::sinh(l * xi);
  const cplx sm = std::sin(l * (xi - 1)), shm = std::sinh(l * (xi - 1));
  const cplx det0 = -8.0 * l3 * l2 * sh * s;
  const cplx detA = det_alpha(p, l, mu).value();
  const cplx Dl = 4.0 * l2 * mu / a * (sx * sm * sh - shx * shm * s);
  const cplx D3 = 4.0 * l * mu / a *
                  (sm * ((A + B) / 2.0 * (shx - sx) - C * sh) + shm * ((A - B) / 2.0 * (shx - sx) + C * s));
  const cplx D1 = 4.0 * l3 * mu / a *
                  (sm * (-(A + B) / 2.0 * (shx + sx) + C * sh) + shm * (-(A - B) / 2.0 * (shx + sx) + C * s));
  const cplx D0 = -4.0 * l3 * (2.0 * C * s * sh - (A + B) * s * shx - (A - B) * sx * sh);

  GridFunction u(M, in.u1.marked);
  for (int j = 0; j <= M; ++j) {
    const double x = f.x(j);
    const cplx r0 = conv[j] + a / det0 *
                                  (4.0 * l2 * l2 * ((A - B) * sh + (A + B) * s) * u0(x) +
                                   4.0 * l3 * l3 * ((A + B) * s - (A - B) * sh) * u0xx(x));
    u[j] = (det0 * r0 + al * (Dl * conv[j] + a * D3 * u0(x) + a * D1 * u0xx(x) - mu * D0 * u0(x - xi))) /
           detA;
  }
  return u;
}

}  // namespace pointbeam
