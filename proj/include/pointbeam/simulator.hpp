// Copyright 2026 The pointbeam Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <vector>

#include "pointbeam/beam_model.hpp"
#include "pointbeam/parallel.hpp"

namespace pointbeam {

// Galerkin truncation on sin(k pi x), k = 1..N, state (c, c').
struct ModalSystem {
  int N = 0;
  Eigen::MatrixXd A;      // 2N x 2N, [[0, I], [-K, -C]]
  Eigen::VectorXd s;      // s_k = sin(k pi xi)
  Eigen::VectorXd omega;  // sqrt(a) k^2 pi^2
  BeamParams params;

  // Same generator in energy coordinates (omega c, c'); similar to A.
  Eigen::MatrixXd energy_generator() const;
};

ModalSystem assemble_modal(const BeamParams& p, int N);

// All 2N eigenvalues, sorted by |Im|, then Im descending, then Re descending.
std::vector<cplx> modal_eigen_oracle(const BeamParams& p, int N);

struct ModalState {
  Eigen::VectorXd c;
  Eigen::VectorXd cd;
};

// c_n = 1/n^2, c_n' = 0.
ModalState smooth_initial_state(int N);

struct Trajectory {
  std::vector<double> times;
  Eigen::MatrixXd c;   // samples x N
  Eigen::MatrixXd cd;  // samples x N
  std::vector<double> energy;
  std::vector<double> ut_xi;
  bool used_fallback = false;
  double eigvec_condition = 0;
};

inline constexpr double kConditionLimit = 1e10;

// Exact propagation through the eigendecomposition; adaptive Dormand-Prince when the
// eigenvector matrix condition number exceeds kConditionLimit.
Trajectory simulate(const BeamParams& p, const ModalState& init, double T, int samples, int N,
                    bool force_fallback = false);

// E = 1/4 sum(c'^2 + a n^4 pi^4 c^2) + 1/2 beta u(xi)^2.
double modal_energy(const BeamParams& p, const Eigen::VectorXd& c, const Eigen::VectorXd& cd);

struct DissipationReport {
  double max_mismatch = 0;  // max |dE/dt - rhs| / max |rhs|
  double max_rhs = 0;
  std::size_t checked = 0;
};

DissipationReport dissipation_check(const Trajectory& traj, const BeamParams& p);

// Least-squares slope of log E over the trailing window, halved.
double fit_decay_rate(const Trajectory& traj, double tail_fraction);

// Removes the spectral projection onto the eigenvalue(s) with the largest real part.
ModalState deflate_slowest(const BeamParams& p, const ModalState& init);

// Largest eigenvalue of the symmetric part of the energy-coordinate generator (beta = 0).
double dissipativity_margin(const ModalSystem& sys);

}  // namespace pointbeam
