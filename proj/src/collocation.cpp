// Copyright 2026 The pointbeam Authors
// SPDX-License-Identifier: Apache-2.0

#include <Eigen/Dense>
#include <cmath>

#include "pointbeam/quadrature.hpp"
#include "pointbeam/resolvent.hpp"

namespace pointbeam {

namespace {

struct Cheb {
  std::vector<double> x;
  std::vector<double> w;  // barycentric weights
  Eigen::MatrixXd D;
};

// Chebyshev-Lobatto nodes on [lo, hi], ascending, with the first-derivative matrix.
Cheb chebyshev(int n, double lo, double hi) {
  Cheb c;
  c.x.resize(n + 1);
  c.w.resize(n + 1);
  for (int k = 0; k <= n; ++k) {
    const double t = -std::cos(pi * k / n);
    c.x[k] = 0.5 * (lo + hi) + 0.5 * (hi - lo) * t;
    c.w[k] = (k % 2 == 0 ? 1.0 : -1.0) * (k == 0 || k == n ? 0.5 : 1.0);
  }
  c.D = Eigen::MatrixXd::Zero(n + 1, n + 1);
  for (int i = 0; i <= n; ++i) {
    double diag = 0;
    for (int j = 0; j <= n; ++j) {
      if (i == j) continue;
      c.D(i, j) = (c.w[j] / c.w[i]) / (c.x[i] - c.x[j]);
      diag -= c.D(i, j);
    }
    c.D(i, i) = diag;
  }
  return c;
}

cplx barycentric(const std::vector<double>& x, const std::vector<double>& w,
                 const std::vector<cplx>& f, double t) {
  cplx num = 0;
  double den = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double d = t - x[k];
    if (d == 0) return f[k];
    num += w[k] / d * f[k];
    den += w[k] / d;
  }
  return num / den;
}

std::vector<double> bary_weights(int n) {
  std::vector<double> w(n + 1);
  for (int k = 0; k <= n; ++k) w[k] = (k % 2 == 0 ? 1.0 : -1.0) * (k == 0 || k == n ? 0.5 : 1.0);
  return w;
}

}  // namespace

cplx CollocationSolution::operator()(double x) const {
  const int n = static_cast<int>(left_nodes.size()) - 1;
  const auto w = bary_weights(n);
  return x <= xi ? barycentric(left_nodes, w, left, x) : barycentric(right_nodes, w, right, x);
}

CollocationSolution collocation_solve(const BeamParams& p, cplx mu,
                                      const std::function<cplx(double)>& f10, cplx u1_at_xi,
                                      int n) {
  validate(p);
  if (n < 8) throw Error(ErrorCode::InvalidParams, "need at least 8 nodes per side");
  const Cheb L = chebyshev(n, 0.0, p.xi), R = chebyshev(n, p.xi, 1.0);
  const Eigen::MatrixXd L2 = L.D * L.D, L3 = L2 * L.D, L4 = L3 * L.D;
  const Eigen::MatrixXd R2 = R.D * R.D, R3 = R2 * R.D, R4 = R3 * R.D;
  const int m = n + 1, size = 2 * m;
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(size, size);
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(size);
  const cplx k = p.b * mu + mu * mu;
  int row = 0;
  for (int i = 2; i <= n - 2; ++i, ++row) {
    A.block(row, 0, 1, m) = (p.a * L4.row(i)).cast<cplx>();
    A(row, i) += k;
    rhs[row] = f10(L.x[i]);
  }
  for (int i = 2; i <= n - 2; ++i, ++row) {
    A.block(row, m, 1, m) = (p.a * R4.row(i)).cast<cplx>();
    A(row, m + i) += k;
    rhs[row] = f10(R.x[i]);
  }
  A(row++, 0) = 1;
  A.block(row++, 0, 1, m) = L2.row(0).cast<cplx>();
  A(row++, m + n) = 1;
  A.block(row++, m, 1, m) = R2.row(n).cast<cplx>();
  A(row, n) = 1;
  A(row++, m) = -1;
  A.block(row, 0, 1, m) = L.D.row(n).cast<cplx>();
  A.block(row++, m, 1, m) = -R.D.row(0).cast<cplx>();
  A.block(row, 0, 1, m) = L2.row(n).cast<cplx>();
  A.block(row++, m, 1, m) = -R2.row(0).cast<cplx>();
  // a (u'''(xi+) - u'''(xi-)) + (alpha mu + beta) u(xi) = alpha u1(xi)
  A.block(row, 0, 1, m) = (-p.a * L3.row(n)).cast<cplx>();
  A.block(row, m, 1, m) = (p.a * R3.row(0)).cast<cplx>();
  A(row, n) += p.alpha * mu + p.beta;
  rhs[row++] = p.alpha * u1_at_xi;

  const Eigen::VectorXcd u = A.fullPivLu().solve(rhs);
  CollocationSolution s;
  s.xi = p.xi;
  s.left_nodes = L.x;
  s.right_nodes = R.x;
  s.left.assign(u.data(), u.data() + m);
  s.right.assign(u.data() + m, u.data() + size);
  return s;
}

double resolvent_crosscheck(const BeamParams& p, const ResolventInput& in,
                            const ResolventOutput& out, int nodes_per_side) {
  GridFunction f(in.u1.M, in.u1.marked);
  for (int j = 0; j <= f.M; ++j) f[j] = (in.mu + p.b) * in.u1[j] + in.v1[j];
  const cplx u1x = in.u1_at_xi ? *in.u1_at_xi : interpolate(in.u1, p.xi);
  const auto sol = collocation_solve(
      p, in.mu, [&](double x) { return interpolate(f, x); }, u1x, nodes_per_side);
  double err = 0;
  for (int j = 0; j <= out.u.M; ++j) err = std::max(err, std::abs(out.u[j] - sol(out.u.x(j))));
  return err / std::max(out.u.max_abs(), 1e-300);
}

}  // namespace pointbeam
