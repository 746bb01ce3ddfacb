// Copyright 2026 The pointbeam Authors
// SPDX-License-Identifier: Apache-2.0

#include "pointbeam/simulator.hpp"

#include <algorithm>
#include <boost/numeric/odeint.hpp>
#include <cmath>

namespace pointbeam {

namespace {

bool oracle_less(cplx x, cplx y) {
  const double ix = std::abs(x.imag()), iy = std::abs(y.imag());
  if (ix != iy) return ix < iy;
  if (x.imag() != y.imag()) return x.imag() > y.imag();
  return x.real() > y.real();
}

Eigen::VectorXd energy_coords(const ModalSystem& sys, const ModalState& st) {
  Eigen::VectorXd z(2 * sys.N);
  z.head(sys.N) = sys.omega.cwiseProduct(st.c);
  z.tail(sys.N) = st.cd;
  return z;
}

ModalState from_energy_coords(const ModalSystem& sys, const Eigen::VectorXd& z) {
  return {z.head(sys.N).cwiseQuotient(sys.omega), z.tail(sys.N)};
}

}  // namespace

ModalSystem assemble_modal(const BeamParams& p, int N) {
  validate(p);
  if (N < 2) throw Error(ErrorCode::InvalidParams, "N must be >= 2");
  ModalSystem sys;
  sys.N = N;
  sys.params = p;
  sys.s.resize(N);
  sys.omega.resize(N);
  for (int k = 1; k <= N; ++k) {
    sys.s[k - 1] = std::sin(k * pi * p.xi);
    sys.omega[k - 1] = std::sqrt(p.a) * k * k * pi * pi;
  }
  Eigen::MatrixXd K = 2 * p.beta * sys.s * sys.s.transpose();
  Eigen::MatrixXd C = 2 * p.alpha * sys.s * sys.s.transpose();
  for (int k = 0; k < N; ++k) {
    K(k, k) += sys.omega[k] * sys.omega[k];
    C(k, k) += p.b;
  }
  sys.A = Eigen::MatrixXd::Zero(2 * N, 2 * N);
  sys.A.topRightCorner(N, N) = Eigen::MatrixXd::Identity(N, N);
  sys.A.bottomLeftCorner(N, N) = -K;
  sys.A.bottomRightCorner(N, N) = -C;
  return sys;
}

Eigen::MatrixXd ModalSystem::energy_generator() const {
  const auto& p = params;
  Eigen::MatrixXd Ae = Eigen::MatrixXd::Zero(2 * N, 2 * N);
  Ae.topRightCorner(N, N) = omega.asDiagonal();
  Eigen::MatrixXd lower = -2 * p.beta * s * s.cwiseQuotient(omega).transpose();
  lower.diagonal() -= omega;
  Ae.bottomLeftCorner(N, N) = lower;
  Eigen::MatrixXd C = -2 * p.alpha * s * s.transpose();
  C.diagonal().array() -= p.b;
  Ae.bottomRightCorner(N, N) = C;
  return Ae;
}

std::vector<cplx> modal_eigen_oracle(const BeamParams& p, int N) {
  const auto sys = assemble_modal(p, N);
  Eigen::EigenSolver<Eigen::MatrixXd> es(sys.energy_generator(), false);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::EigensolverFailure, "QR iteration failed");
  std::vector<cplx> ev(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(ev.begin(), ev.end(), oracle_less);
  return ev;
}

ModalState smooth_initial_state(int N) {
  ModalState st{Eigen::VectorXd(N), Eigen::VectorXd::Zero(N)};
  for (int n = 1; n <= N; ++n) st.c[n - 1] = 1.0 / (static_cast<double>(n) * n);
  return st;
}

double modal_energy(const BeamParams& p, const Eigen::VectorXd& c, const Eigen::VectorXd& cd) {
  double e = 0, u = 0;
  for (int k = 0; k < c.size(); ++k) {
    const double w = std::sqrt(p.a) * (k + 1) * (k + 1) * pi * pi;
    e += cd[k] * cd[k] + w * w * c[k] * c[k];
    u += c[k] * std::sin((k + 1) * pi * p.xi);
  }
  return 0.25 * e + 0.5 * p.beta * u * u;
}

Trajectory simulate(const BeamParams& p, const ModalState& init, double T, int samples, int N,
                    bool force_fallback) {
  if (!(T > 0)) throw Error(ErrorCode::InvalidParams, "T must be > 0");
  if (samples < 2) throw Error(ErrorCode::InvalidParams, "need at least 2 samples");
  if (init.c.size() != N || init.cd.size() != N)
    throw Error(ErrorCode::InvalidParams, "initial state dimension must equal N");
  const auto sys = assemble_modal(p, N);
  const Eigen::MatrixXd Ae = sys.energy_generator();
  const Eigen::VectorXd z0 = energy_coords(sys, init);

  Trajectory tr;
  tr.times.resize(samples);
  for (int k = 0; k < samples; ++k) tr.times[k] = T * k / (samples - 1);
  tr.c.resize(samples, N);
  tr.cd.resize(samples, N);

  Eigen::EigenSolver<Eigen::MatrixXd> es(Ae, true);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::EigensolverFailure, "QR iteration failed");
  const Eigen::MatrixXcd V = es.eigenvectors();
  const Eigen::VectorXcd lam = es.eigenvalues();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(V);
  const auto sv = svd.singularValues();
  tr.eigvec_condition = sv[0] / sv[sv.size() - 1];

  auto store = [&](int k, const Eigen::VectorXd& z) {
    const auto st = from_energy_coords(sys, z);
    tr.c.row(k) = st.c.transpose();
    tr.cd.row(k) = st.cd.transpose();
  };

  if (!force_fallback && tr.eigvec_condition <= kConditionLimit) {
    const Eigen::VectorXcd coef = V.partialPivLu().solve(z0.cast<cplx>());
    for (int k = 0; k < samples; ++k) {
      const Eigen::VectorXcd e = (lam * tr.times[k]).array().exp().matrix();
      store(k, (V * coef.cwiseProduct(e)).real());
    }
  } else {
    namespace ode = boost::numeric::odeint;
    using State = std::vector<double>;
    tr.used_fallback = true;
    auto rhs = [&](const State& x, State& dx, double) {
      Eigen::Map<const Eigen::VectorXd> xv(x.data(), 2 * N);
      Eigen::Map<Eigen::VectorXd> dv(dx.data(), 2 * N);
      dv.noalias() = Ae * xv;
    };
    State x(z0.data(), z0.data() + 2 * N);
    int k = 0;
    auto observe = [&](const State& s, double) {
      store(k++, Eigen::Map<const Eigen::VectorXd>(s.data(), 2 * N));
    };
    const double dt0 = std::min(T / samples, 0.1 / sys.omega[N - 1]);
    ode::integrate_times(ode::make_dense_output(1e-12, 1e-12, ode::runge_kutta_dopri5<State>()),
                         rhs, x, tr.times.begin(), tr.times.end(), dt0, observe);
  }

  tr.energy.resize(samples);
  tr.ut_xi.resize(samples);
  for (int k = 0; k < samples; ++k) {
    const Eigen::VectorXd c = tr.c.row(k).transpose(), cd = tr.cd.row(k).transpose();
    tr.energy[k] = modal_energy(p, c, cd);
    tr.ut_xi[k] = cd.dot(sys.s);
  }
  return tr;
}

DissipationReport dissipation_check(const Trajectory& traj, const BeamParams& p) {
  DissipationReport rep;
  const std::size_t K = traj.times.size();
  if (K < 5) throw Error(ErrorCode::SamplingTooCoarse, "need at least 5 samples");
  const int N = static_cast<int>(traj.c.cols());
  const double dt = traj.times[1] - traj.times[0];
  const double shortest = 2 * pi / (std::sqrt(p.a) * N * N * pi * pi);
  if (dt > shortest / 20) throw Error(ErrorCode::SamplingTooCoarse, "fewer than 20 samples per period");
  Eigen::VectorXd s(N);
  for (int k = 0; k < N; ++k) s[k] = std::sin((k + 1) * pi * p.xi);
  std::vector<double> diff;
  for (std::size_t k = 2; k + 2 < K; ++k) {
    const auto& E = traj.energy;
    const double lhs = (-E[k + 2] + 8 * E[k + 1] - 8 * E[k - 1] + E[k - 2]) / (12 * dt);
    const Eigen::VectorXd cd = traj.cd.row(k).transpose();
    const double ut = cd.dot(s);
    const double rhs = -p.b * 0.5 * cd.squaredNorm() - p.alpha * ut * ut;
    rep.max_rhs = std::max(rep.max_rhs, std::abs(rhs));
    diff.push_back(std::abs(lhs - rhs));
    ++rep.checked;
  }
  const double dmax = diff.empty() ? 0.0 : *std::max_element(diff.begin(), diff.end());
  rep.max_mismatch = rep.max_rhs > 0 ? dmax / rep.max_rhs : dmax;
  return rep;
}

double fit_decay_rate(const Trajectory& traj, double tail_fraction) {
  if (!(tail_fraction > 0 && tail_fraction < 1))
    throw Error(ErrorCode::InvalidParams, "tail_fraction must lie in (0,1)");
  const std::size_t K = traj.times.size();
  const std::size_t first = static_cast<std::size_t>(std::floor((1 - tail_fraction) * (K - 1)));
  double st = 0, sy = 0, stt = 0, sty = 0;
  std::size_t m = 0;
  for (std::size_t k = first; k < K; ++k) {
    if (traj.energy[k] < 1e-280) throw Error(ErrorCode::EnergyUnderflow, "energy below 1e-280");
    const double t = traj.times[k], y = std::log(traj.energy[k]);
    st += t; sy += y; stt += t * t; sty += t * y;
    ++m;
  }
  const double slope = (m * sty - st * sy) / (m * stt - st * st);
  return slope / 2;
}

ModalState deflate_slowest(const BeamParams& p, const ModalState& init) {
  const int N = static_cast<int>(init.c.size());
  const auto sys = assemble_modal(p, N);
  Eigen::EigenSolver<Eigen::MatrixXd> es(sys.energy_generator(), true);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::EigensolverFailure, "QR iteration failed");
  const Eigen::MatrixXcd V = es.eigenvectors();
  const Eigen::VectorXcd lam = es.eigenvalues();
  double top = -1e300;
  for (int j = 0; j < lam.size(); ++j) top = std::max(top, lam[j].real());
  Eigen::VectorXcd coef = V.partialPivLu().solve(energy_coords(sys, init).cast<cplx>());
  for (int j = 0; j < lam.size(); ++j)
    if (lam[j].real() >= top - 1e-12 * std::max(1.0, std::abs(top))) coef[j] = 0;
  return from_energy_coords(sys, (V * coef).real());
}

double dissipativity_margin(const ModalSystem& sys) {
  const int n = 2 * sys.N;
  Eigen::VectorXd u = Eigen::VectorXd::Zero(n);
  u.head(sys.N) = sys.s.cwiseQuotient(sys.omega);
  Eigen::MatrixXd W = 0.5 * Eigen::MatrixXd::Identity(n, n) + sys.params.beta * u * u.transpose();
  const Eigen::MatrixXd WA = W * sys.energy_generator();
  const Eigen::MatrixXd S = 0.5 * (WA + WA.transpose());
  Eigen::LLT<Eigen::MatrixXd> llt(W);
  const Eigen::MatrixXd L = llt.matrixL();
  const Eigen::MatrixXd Li = L.inverse();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Li * S * Li.transpose());
  return es.eigenvalues().maxCoeff();
}

}  // namespace pointbeam
