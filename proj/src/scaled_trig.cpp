// Copyright 2026 The pointbeam Authors
// SPDX-License-Identifier: Apache-2.0

#include "pointbeam/scaled_trig.hpp"

#include <cmath>

namespace pointbeam {

namespace {

// (1 + e^{-2t})/2 and sign(y)(1 - e^{-2t})/2 with t = |y|.
inline void even_odd(double y, double& ev, double& od) {
  const double t = std::abs(y);
  const double e = std::exp(-2 * t);
  ev = 0.5 * (1 + e);
  od = -0.5 * std::expm1(-2 * t);
  if (y < 0) od = -od;
}

}  // namespace

StrippedTrig stripped_sin_cos(cplx z) {
  double ev, od;
  even_odd(z.imag(), ev, od);
  const double sx = std::sin(z.real()), cx = std::cos(z.real());
  return {{sx * ev, cx * od}, {cx * ev, -sx * od}};
}

StrippedHyp stripped_sinh_cosh(cplx z) {
  double ev, od;
  even_odd(z.real(), ev, od);
  const double sy = std::sin(z.imag()), cy = std::cos(z.imag());
  return {{od * cy, ev * sy}, {ev * cy, od * sy}};
}

StrippedProducts stripped_products(cplx z, double xi) {
  const double eta = 1 - xi;
  const auto t = stripped_sin_cos(z);
  const auto h = stripped_sinh_cosh(z);
  const auto tx = stripped_sin_cos(xi * z);
  const auto hx = stripped_sinh_cosh(xi * z);
  const auto te = stripped_sin_cos(eta * z);
  const auto he = stripped_sinh_cosh(eta * z);

  StrippedProducts r;
  r.scale_log = std::abs(z.real()) + std::abs(z.imag());
  r.P = h.sh * t.s;
  r.dP = h.ch * t.s + h.sh * t.c;
  const cplx hh = hx.sh * he.sh;
  const cplx ss = tx.s * te.s;
  r.Q = t.s * hh - h.sh * ss;
  r.dQ = t.c * hh + t.s * (xi * hx.ch * he.sh + eta * hx.sh * he.ch) - h.ch * ss -
         h.sh * (xi * tx.c * te.s + eta * tx.s * te.c);
  return r;
}

namespace {

constexpr int kDeg = 4 * SmallLambdaSeries::terms + 8;

void sin_series(long double c, long double* out, bool hyperbolic) {
  long double term = c;  // c^k / k! for k = 1
  for (int k = 0; k < kDeg; ++k) out[k] = 0;
  for (int k = 1; k < kDeg; k += 2) {
    const int m = (k - 1) / 2;
    out[k] = (hyperbolic || m % 2 == 0) ? term : -term;
    term *= c * c / static_cast<long double>((k + 1) * (k + 2));
  }
}

void mul(const long double* x, const long double* y, long double* out) {
  for (int k = 0; k < kDeg; ++k) {
    long double s = 0;
    for (int i = 0; i <= k; ++i) s += x[i] * y[k - i];
    out[k] = s;
  }
}

}  // namespace

SmallLambdaSeries::SmallLambdaSeries(double xi) {
  const long double x = xi, e = 1.0L - x;
  long double s1[kDeg], sh1[kDeg], sx[kDeg], shx[kDeg], se[kDeg], she[kDeg];
  sin_series(1.0L, s1, false);
  sin_series(1.0L, sh1, true);
  sin_series(x, sx, false);
  sin_series(x, shx, true);
  sin_series(e, se, false);
  sin_series(e, she, true);
  long double a[kDeg], b[kDeg], c[kDeg], d[kDeg], pp[kDeg];
  mul(shx, she, a);
  mul(s1, a, b);
  mul(sx, se, a);
  mul(sh1, a, c);
  mul(s1, sh1, pp);
  for (int k = 0; k < kDeg; ++k) d[k] = b[k] - c[k];
  for (int n = 0; n < terms; ++n) {
    p[n] = static_cast<double>(pp[4 * n + 2]);
    q[n] = static_cast<double>(d[4 * n + 5]);
  }
}

void SmallLambdaSeries::eval(cplx w, cplx& pw, cplx& dpw, cplx& qw, cplx& dqw) const {
  pw = dpw = qw = dqw = 0.0;
  for (int n = terms - 1; n >= 0; --n) {
    pw = pw * w + p[n];
    qw = qw * w + q[n];
    if (n >= 1) {
      dpw = dpw * w + static_cast<double>(n) * p[n];
      dqw = dqw * w + static_cast<double>(n) * q[n];
    }
  }
}

}  // namespace pointbeam
