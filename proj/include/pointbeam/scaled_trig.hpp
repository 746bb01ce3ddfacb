// Copyright 2026 The pointbeam Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "pointbeam/beam_model.hpp"

namespace pointbeam {

// sin z and cos z times exp(-|Im z|).
struct StrippedTrig {
  cplx s;
  cplx c;
};

// sinh z and cosh z times exp(-|Re z|).
struct StrippedHyp {
  cplx sh;
  cplx ch;
};

StrippedTrig stripped_sin_cos(cplx z);
StrippedHyp stripped_sinh_cosh(cplx z);

// sinh z sin z and the point-damper bracket
//   Q(z) = sin z sinh(xi z) sinh(eta z) - sinh z sin(xi z) sin(eta z),  eta = 1 - xi,
// with their z-derivatives, all sharing the stripped factor exp(|Re z| + |Im z|).
struct StrippedProducts {
  cplx P, dP;
  cplx Q, dQ;
  double scale_log;
};

StrippedProducts stripped_products(cplx z, double xi);

// Taylor coefficients of P(z)/z^2 and Q(z)/z^5 in w = z^4.
struct SmallLambdaSeries {
  static constexpr int terms = 12;
  double p[terms];
  double q[terms];
  explicit SmallLambdaSeries(double xi);
  void eval(cplx w, cplx& pw, cplx& dpw, cplx& qw, cplx& dqw) const;
};

}  // namespace pointbeam
