// Copyright 2026 The pointbeam Authors
// SPDX-License-Identifier: Apache-2.0

#include "pointbeam/eigenfunctions.hpp"

#include <algorithm>
#include <cmath>

#include "pointbeam/chareq.hpp"
#include "pointbeam/quadrature.hpp"
#include "pointbeam/scaled_trig.hpp"
#include "pointbeam/spectrum.hpp"

namespace pointbeam {

namespace {

// d-th derivative of sin at z, stripped by exp(-|Im z|).
cplx dsin(cplx z, int d) {
  const auto t = stripped_sin_cos(z);
  switch (d % 4) {
    case 0: return t.s;
    case 1: return t.c;
    case 2: return -t.s;
    default: return -t.c;
  }
}

// d-th derivative of sinh at z, stripped by exp(-|Re z|).
cplx dsinh(cplx z, int d) {
  const auto h = stripped_sinh_cosh(z);
  return d % 2 == 0 ? h.sh : h.ch;
}

}  // namespace

PhiEvaluator::PhiEvaluator(cplx lambda, double xi)
    : lambda_(lambda),
      xi_(xi),
      log_pref_((xi - 2) * std::abs(lambda) - 2 * std::log(std::abs(lambda))) {}

cplx PhiEvaluator::eval(double x, int d, bool heaviside) const {
  const cplx l = lambda_;
  const double re = std::abs(l.real()), im = std::abs(l.imag());
  const double eta = 1 - xi_;
  const cplx ld = std::pow(l, d);
  const auto t = stripped_sin_cos(l);
  const auto h = stripped_sinh_cosh(l);

  const cplx A = t.s * dsinh(l * eta, 0) * dsinh(l * x, d);
  const double sa = im + re * eta + re * x;
  const cplx B = h.sh * dsin(l * eta, 0) * dsin(l * x, d);
  const double sb = re + im * eta + im * x;
  cplx v = A * std::exp(sa + log_pref_) - B * std::exp(sb + log_pref_);
  if (heaviside) {
    const double y = x - xi_;
    const cplx T1 = t.s * h.sh * dsin(l * y, d);
    const cplx T2 = t.s * h.sh * dsinh(l * y, d);
    v += T1 * std::exp(im + re + im * y + log_pref_) - T2 * std::exp(im + re + re * y + log_pref_);
  }
  return ld * v;
}

cplx PhiEvaluator::value(double x, int d) const { return eval(x, d, x > xi_); }
cplx PhiEvaluator::value_left(double x, int d) const { return eval(x, d, false); }
cplx PhiEvaluator::value_right(double x, int d) const { return eval(x, d, true); }

EigenfunctionPair eval_phi(const BeamParams& p, const SpectralPoint& point, int grid_size) {
  validate(p);
  const auto rv = reduced_char(p, point.mu);
  if (rv.normalized() > 1e-8)
    throw Error(ErrorCode::ResidualTooLarge, "point is not an eigenvalue to 1e-8");
  const cplx l = rv.lambda;
  if (std::abs(std::sin(l)) < 1e-14 || std::abs(std::sinh(l)) < 1e-14)
    throw Error(ErrorCode::DegenerateTrig, "lambda at k pi or i k pi; use eval_psi");
  const PhiEvaluator phi(l, p.xi);
  const int mark = nearest_node(grid_size, p.xi);
  EigenfunctionPair out;
  out.mu = point.mu;
  out.lambda = l;
  out.first = GridFunction(grid_size, mark);
  out.second = GridFunction(grid_size, mark);
  for (int j = 0; j <= grid_size; ++j) {
    const double x = out.first.x(j);
    out.first[j] = phi.value(x);
    out.second[j] = point.mu * out.first[j];
  }
  return out;
}

namespace {

double psi_amplitude(int n, double xi) {
  const double k = n * pi;
  // e^{k(xi-2)} sinh(k) without overflow.
  const double es = 0.5 * (std::exp(k * (xi - 1)) - std::exp(k * (xi - 3)));
  return es * std::sin(k * (1 - xi)) / (k * k);
}

}  // namespace

EigenfunctionPair eval_psi(int n, Sign s, const BeamParams& p, int grid_size, bool imaginary_form) {
  if (n == 0) throw Error(ErrorCode::InvalidParams, "n must be nonzero");
  const int na = std::abs(n);
  const cplx mu = closed_form_mu(p.a, p.b, na, s);
  const cplx amp = psi_amplitude(na, p.xi) * (imaginary_form ? cplx(0, -1) : cplx(1, 0));
  const int mark = nearest_node(grid_size, p.xi);
  EigenfunctionPair out;
  out.mu = mu;
  out.lambda = imaginary_form ? cplx(0, na * pi) : cplx(na * pi, 0);
  out.first = GridFunction(grid_size, mark);
  out.second = GridFunction(grid_size, mark);
  for (int j = 0; j <= grid_size; ++j) {
    out.first[j] = amp * std::sin(na * pi * out.first.x(j));
    out.second[j] = mu * out.first[j];
  }
  return out;
}

EigenResiduals eigen_residuals(const BeamParams& p, const EigenfunctionPair& pair) {
  EigenResiduals r;
  const auto& g = pair.first;
  const int M = g.M;
  const cplx l = pair.lambda, mu = pair.mu;
  const double norm = std::max(g.max_abs(), 1e-300);
  const double L = std::max(1.0, std::abs(l));
  const PhiEvaluator phi(l, p.xi);

  // Interior ODE with a centered 9-point stencil on every st-th node, kept clear of xi.
  const int st = std::clamp(static_cast<int>(0.15 / (L * g.h())), 1, std::max(1, M / 128));
  const int half = 4;
  std::vector<double> off(2 * half + 1);
  for (int i = 0; i <= 2 * half; ++i) off[i] = (i - half) * st * g.h();
  const auto w4 = fd_weights(0.0, off, 4);
  const cplx k = p.b * mu + mu * mu;
  for (int j = half * st; j + half * st <= M; ++j) {
    if (g.x(j - half * st) < p.xi && g.x(j + half * st) > p.xi) continue;
    cplx d4 = 0;
    for (int i = 0; i <= 2 * half; ++i) d4 += w4[i] * g[j + (i - half) * st];
    const cplx res = p.a * d4 + k * g[j];
    r.ode = std::max(r.ode, std::abs(res) / (norm * std::max(1.0, std::abs(p.a * std::pow(l, 4)))));
  }

  r.boundary = std::max({std::abs(phi.value(0.0, 0)), std::abs(phi.value(1.0, 0)),
                         std::abs(phi.value(0.0, 2)) / (L * L), std::abs(phi.value(1.0, 2)) / (L * L)}) /
               norm;
  r.continuity = std::max(std::abs(phi.value_right(p.xi, 0) - phi.value_left(p.xi, 0)),
                          std::abs(phi.value_right(p.xi, 2) - phi.value_left(p.xi, 2)) / (L * L)) /
                 norm;

  const cplx d3l = phi.value_left(p.xi, 3);
  const cplx d3r = phi.value_right(p.xi, 3);
  const cplx expected = -(p.alpha / p.a) * mu * phi.value_left(p.xi, 0);
  const double denom = std::abs(expected) > 0 ? std::abs(expected) : norm * L * L * L;
  r.jump = std::abs((d3r - d3l) - expected) / denom;
  return r;
}

namespace {

struct HFields {
  cplx phi, phi2, psi, psi2;
};

struct HSums {
  double phi2 = 0, psi2 = 0;
  cplx cross{};  // <Psi, Phi>
};

template <class F>
void for_split_nodes(double xi, int M, F&& f) {
  const int ml = std::max(2, 2 * static_cast<int>(std::lround(xi * M / 2)));
  const int mr = std::max(2, 2 * static_cast<int>(std::lround((1 - xi) * M / 2)));
  const double hl = xi / ml, hr = (1 - xi) / mr;
  auto weight = [](int j, int m, double h) {
    if (j == 0 || j == m) return h / 3;
    return (j % 2 == 1 ? 4 : 2) * h / 3;
  };
  for (int j = 0; j <= ml; ++j) f(j == ml ? xi : j * hl, weight(j, ml, hl));
  for (int j = 0; j <= mr; ++j) f(j == 0 ? xi : (j == mr ? 1.0 : xi + j * hr), weight(j, mr, hr));
}

class HnormWorker {
 public:
  HnormWorker(const BeamParams& p, const EigenRecord& rec) : p_(p) {
    n_ = rec.n;
    mu_ = rec.point.mu;
    mu_psi_ = closed_form_mu(p.a, p.b, n_, rec.sign);
    amp_ = psi_amplitude(n_, p.xi);
    const auto sp = lambda_from_mu(p, mu_);
    lambda_ = sp.lambda;
    limit_ = sp.degenerate || std::abs(std::sin(lambda_)) < 1e-14 ||
             std::abs(std::sinh(lambda_)) < 1e-14;
  }

  HFields at(double x) const {
    const double k = n_ * pi;
    HFields f;
    f.psi = amp_ * std::sin(k * x);
    f.psi2 = -k * k * f.psi;
    if (limit_) {
      f.phi = -f.psi;
      f.phi2 = -f.psi2;
    } else {
      const PhiEvaluator e(lambda_, p_.xi);
      f.phi = e.value(x, 0);
      f.phi2 = e.value(x, 2);
    }
    return f;
  }

  HnormDiff run(int M) const {
    HSums s;
    double raw = 0;
    for_split_nodes(p_.xi, M, [&](double x, double w) {
      const auto f = at(x);
      const cplx v1 = mu_ * f.phi, v2 = mu_psi_ * f.psi;
      s.phi2 += w * (p_.a * std::norm(f.phi2) + std::norm(v1));
      s.psi2 += w * (p_.a * std::norm(f.psi2) + std::norm(v2));
      s.cross += w * (p_.a * f.psi2 * std::conj(f.phi2) + v2 * std::conj(v1));
      raw += w * (p_.a * std::norm(f.phi2 - f.psi2) + std::norm(v1 - v2));
    });
    HnormDiff out;
    out.raw = raw;
    const double psin = std::sqrt(s.psi2);
    const cplx c = s.cross / (psin * s.phi2);
    out.scale = c;
    double aligned = 0;
    for_split_nodes(p_.xi, M, [&](double x, double w) {
      const auto f = at(x);
      const cplx d2 = c * f.phi2 - f.psi2 / psin;
      const cplx dv = c * mu_ * f.phi - mu_psi_ * f.psi / psin;
      aligned += w * (p_.a * std::norm(d2) + std::norm(dv));
    });
    out.aligned = aligned;
    return out;
  }

 private:
  const BeamParams& p_;
  int n_ = 1;
  cplx mu_{}, mu_psi_{}, lambda_{};
  double amp_ = 0;
  bool limit_ = false;
};

}  // namespace

HnormDiff hnorm_diff(const BeamParams& p, const EigenRecord& rec, int grid_size) {
  if (grid_size < 16) throw Error(ErrorCode::InvalidParams, "grid_size must be >= 16");
  const HnormWorker w(p, rec);
  HnormDiff fine = w.run(grid_size);
  const HnormDiff coarse = w.run(grid_size / 2);
  fine.half_grid = coarse.aligned;
  if (std::abs(fine.aligned - coarse.aligned) > 0.01 * fine.aligned + 1e-14)
    throw Error(ErrorCode::GridTooCoarse, "half-grid H-norm differs by more than 1%");
  return fine;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

RieszReport riesz_tail_report(const BeamParams& p, int n0, int n_max, int grid_size, Exec exec) {
  if (n0 < 1 || n_max < n0) throw Error(ErrorCode::InvalidParams, "need 1 <= n0 <= n_max");
  const auto spec = compute_spectrum(p, n_max, exec);
  std::vector<EigenRecord> recs;
  for (int n = n0; n <= n_max; ++n) {
    const EigenRecord* best = nullptr;
    for (const auto& r : spec.eigenvalues)
      if (r.n == n && r.sign == Sign::plus && !best) best = &r;
    if (!best) throw Error(ErrorCode::AuditMismatch, "mode " + std::to_string(n) + " missing");
    recs.push_back(*best);
  }
  RieszReport rep;
  rep.rows.resize(recs.size());
  for_each_index(exec, static_cast<std::ptrdiff_t>(recs.size()), [&](std::ptrdiff_t i) {
    const auto h = hnorm_diff(p, recs[i], grid_size);
    rep.rows[i] = {recs[i].n, recs[i].point.mu, h.aligned, h.raw, 0};
  });
  double acc = 0, amax = 0;
  for (auto& row : rep.rows) {
    acc += row.aligned;
    row.partial_sum = acc;
    amax = std::max(amax, row.aligned);
  }
  rep.trivial = amax <= 1e-10;
  if (rep.trivial || rep.rows.size() < 2) {
    rep.consistent = rep.trivial;
    rep.exponent = rep.raw_exponent = std::nan("");
    return rep;
  }
  std::vector<double> ns, dn, dr;
  for (const auto& row : rep.rows) {
    if (!(row.aligned > 0)) continue;
    const double s = std::sin(row.n * pi * p.xi);
    ns.push_back(row.n);
    dr.push_back(row.aligned);
    dn.push_back(row.aligned / (s * s));
  }
  rep.exponent = loglog_slope(ns, dn);
  rep.raw_exponent = loglog_slope(ns, dr);
  // Tail of C sin^2(n pi xi) n^e beyond n_max; sin^2(n pi xi) averages 1/2 for irrational xi.
  if (rep.exponent < -1) {
    double logc = 0;
    for (std::size_t i = 0; i < ns.size(); ++i) logc += std::log(dn[i]) - rep.exponent * std::log(ns[i]);
    logc /= static_cast<double>(ns.size());
    const double tail = 0.5 * std::exp(logc) * std::pow(n_max + 0.5, rep.exponent + 1) / (-rep.exponent - 1);
    rep.tail_fraction = tail / (acc + tail);
  } else {
    rep.tail_fraction = 1;
  }
  rep.consistent = rep.exponent <= -1.5;
  return rep;
}

}  // namespace pointbeam
