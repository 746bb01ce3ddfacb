// Copyright 2026 The pointbeam Authors
// SPDX-License-Identifier: Apache-2.0

#include "pointbeam/chareq.hpp"

#include <cmath>
#include <memory>

#include "pointbeam/scaled_trig.hpp"

namespace pointbeam {

namespace {

const SmallLambdaSeries& series_for(double xi) {
  thread_local double cached_xi = -1;
  thread_local std::unique_ptr<SmallLambdaSeries> cached;
  if (!cached || cached_xi != xi) {
    cached = std::make_unique<SmallLambdaSeries>(xi);
    cached_xi = xi;
  }
  return *cached;
}

cplx lambda_or_throw(const BeamParams& p, cplx mu) {
  const auto sp = lambda_from_mu(p, mu);
  if (sp.degenerate) throw Error(ErrorCode::DegenerateLambda, "lambda = 0 at mu in {0, -b}");
  return sp.lambda;
}

CharValue char_general(const BeamParams& p, cplx mu, cplx gamma) {
  const cplx lam = lambda_or_throw(p, mu);
  const auto sp = stripped_products(lam, p.xi);
  const cplx g = 2.0 * (mu + p.b) * sp.P + gamma * lam * sp.Q;
  if (sp.scale_log > kScaleThreshold) return {g, true, sp.scale_log};
  return {g * std::exp(sp.scale_log), false, 0.0};
}

}  // namespace

CharValue char_fn(const BeamParams& p, cplx mu) { return char_general(p, mu, p.alpha); }

CharValue char_fn_beta(const BeamParams& p, cplx mu) {
  if (std::abs(mu) < 1e-12) throw Error(ErrorCode::DivisionNearZero, "|mu| < 1e-12");
  return char_general(p, mu, p.alpha + p.beta / mu);
}

CharValue char_fn_scaled(const BeamParams& p, cplx lambda, cplx mu) {
  if (lambda == 0.0) throw Error(ErrorCode::DegenerateLambda, "lambda = 0");
  const cplx I(0, 1);
  const auto sp = stripped_products(lambda, p.xi);
  const auto t = stripped_sin_cos(lambda);
  const auto h = stripped_sinh_cosh(lambda);
  const cplx S = 2.0 * I * t.s;
  const cplx Sh = 2.0 * h.sh;
  const cplx Bt = 4.0 * I * sp.Q;
  const cplx l3 = lambda * lambda * lambda;
  const cplx v = S * Sh - (p.alpha * mu + p.beta) / (2.0 * p.a * l3) * Bt;
  return {v, true, sp.scale_log};
}

cplx char_derivative(const BeamParams& p, cplx mu) {
  const double fd_zone = 1e-3;
  if (std::abs(mu) < fd_zone || std::abs(mu + p.b) < fd_zone) {
    const double h = 1e-6 * std::max(1.0, std::abs(mu));
    auto G = [&](cplx z) { return char_fn_beta(p, z).unscaled(); };
    return (G(mu + h) - G(mu - h)) / (2 * h);
  }
  const cplx lam = lambda_or_throw(p, mu);
  const auto sp = stripped_products(lam, p.xi);
  const cplx gamma = p.alpha + p.beta / mu;
  const cplx dgamma = -p.beta / (mu * mu);
  const cplx dlam = -(p.b + 2.0 * mu) / (4.0 * p.a * lam * lam * lam);
  const cplx d = 2.0 * sp.P + dgamma * lam * sp.Q +
                 (2.0 * (mu + p.b) * sp.dP + gamma * (sp.Q + lam * sp.dQ)) * dlam;
  return d * std::exp(sp.scale_log);
}

double char_term_scale(const BeamParams& p, cplx mu) {
  const cplx lam = lambda_or_throw(p, mu);
  const double eta = 1 - p.xi;
  const cplx gamma = p.alpha + p.beta / mu;
  const double t1 = 2 * std::abs(mu + p.b) * std::abs(std::sinh(lam) * std::sin(lam));
  const double t2 = std::abs(gamma * lam) *
                    (std::abs(std::sin(lam) * std::sinh(lam * p.xi) * std::sinh(lam * eta)) +
                     std::abs(std::sinh(lam) * std::sin(lam * p.xi) * std::sin(lam * eta)));
  return t1 + t2;
}

ReducedValue reduced_char(const BeamParams& p, cplx mu) {
  ReducedValue r;
  const cplx c = p.alpha * mu + p.beta;
  const cplx w = -(p.b * mu + mu * mu) / p.a;
  r.lambda = principal_fourth_root(w);
  const double al = std::abs(r.lambda);
  r.scale = 2 * p.a / std::max(1.0, al * al) + std::abs(c) / std::max(1.0, std::pow(al, 5));
  if (al < 1.0) {
    cplx pw, dpw, qw, dqw;
    series_for(p.xi).eval(w, pw, dpw, qw, dqw);
    const cplx dw = -(p.b + 2.0 * mu) / p.a;
    r.D = 2 * p.a * pw - c * qw;
    r.dD = (2 * p.a * dpw - c * dqw) * dw - p.alpha * qw;
    r.scale_log = 0;
    return r;
  }
  const cplx lam = r.lambda;
  const auto sp = stripped_products(lam, p.xi);
  const cplx l2 = lam * lam, l3 = l2 * lam, l5 = l3 * l2, l6 = l3 * l3;
  const cplx pl = sp.P / l2, ql = sp.Q / l5;
  const cplx dpl = sp.dP / l2 - 2.0 * sp.P / l3;
  const cplx dql = sp.dQ / l5 - 5.0 * sp.Q / l6;
  const cplx dlam = -(p.b + 2.0 * mu) / (4.0 * p.a * l3);
  r.D = 2 * p.a * pl - c * ql;
  r.dD = (2 * p.a * dpl - c * dql) * dlam - p.alpha * ql;
  r.scale_log = sp.scale_log;
  return r;
}

}  // namespace pointbeam
