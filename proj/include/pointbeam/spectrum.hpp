// Copyright 2026 The pointbeam Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pointbeam/beam_model.hpp"
#include "pointbeam/parallel.hpp"

namespace pointbeam {

// Axis-aligned rectangle lo.real() <= Re mu <= hi.real(), lo.imag() <= Im mu <= hi.imag().
struct ContourBox {
  cplx lo{};
  cplx hi{};
  int depth = 0;
  int winding = -1;

  bool contains(cplx z) const {
    return z.real() > lo.real() && z.real() < hi.real() && z.imag() > lo.imag() &&
           z.imag() < hi.imag();
  }
};

struct ContourStats {
  int winding = 0;
  double min_normalized = 0;  // min |D|/scale on the boundary
  std::size_t samples = 0;
};

inline constexpr double kBoundaryTolerance = 1e-9;
inline constexpr std::size_t kMaxContourSamples = std::size_t(1) << 20;

// Winding number of the reduced characteristic function around box (argument principle).
int count_zeros(const BeamParams& p, const ContourBox& box);
ContourStats count_zeros_stats(const BeamParams& p, const ContourBox& box);

struct RefineResult {
  EigenRecord record;
  int iterations = 0;
  bool converged = false;
  double derivative_ratio = 0;  // |D'| max(1,|mu|) / scale at the result
};

// Newton on the reduced characteristic function. Throws DriftedOutOfBasin when a basin
// radius is given and the iterate ends farther than that from mu0.
RefineResult refine_root(const BeamParams& p, cplx mu0,
                         std::optional<double> basin_radius = std::nullopt);

std::vector<EigenRecord> undamped_spectrum(double a, double b, int n_max);

struct TileAudit {
  double im_lo = 0, im_hi = 0;
  int contour_count = 0;
  int found = 0;
};

struct SpectrumDiagnostics {
  std::vector<TileAudit> tiles;
  int contour_total = 0;
  int found_in_region = 0;
  int outside_region = 0;
  int added_by_search = 0;
  double max_residual = 0;
  double region_left = 0, region_top = 0;
  int n_effective = 0;
};

struct SpectrumResult {
  std::vector<EigenRecord> eigenvalues;  // sorted by |Im mu|, then n, then sign
  double abscissa = 0;
  bool abscissa_caveat = false;
  BeamParams params;
  int n_max = 0;
  SpectrumDiagnostics diagnostics;
};

// Seeds from the undamped spectrum, Newton refinement, and a contour audit of
// [-2b, 0] x [-top, top]. Modes n <= n0 (real pairs) are always included.
SpectrumResult compute_spectrum(const BeamParams& p, int n_max, Exec exec = Exec::parallel);

struct TrackPoint {
  double alpha = 0;
  EigenRecord record;
};

struct TrackedBranch {
  int n = 1;
  Sign sign = Sign::plus;
  std::vector<TrackPoint> path;
};

struct BranchCollision {
  std::size_t first = 0, second = 0;
  double alpha = 0;
  double distance = 0;
};

struct TrackResult {
  std::vector<TrackedBranch> branches;
  std::vector<BranchCollision> collisions;
};

// Continuation in alpha from every closed-form root with n <= n_max.
TrackResult track_alpha(const BeamParams& params0, double alpha_target, int steps, int n_max = 10,
                        Exec exec = Exec::parallel);

// First-order alpha expansion of mu_n^{+/-}: mu0 - 2 alpha sin^2(n pi xi) mu0 / (2 mu0 + b).
cplx perturbation_mu(double a, double b, double xi, double alpha, int n, Sign s);
// Alternative expansion with sin^2(2 n pi xi), kept for comparison.
cplx perturbation_mu_alt(double a, double b, double xi, double alpha, int n, Sign s);

struct AbscissaReport {
  double value = 0;
  bool caveat = false;
};
AbscissaReport spectral_abscissa(const SpectrumResult& result);

struct CriticalAlpha {
  double alpha = 0;
  double r = 0;
  bool admissible = false;  // alpha > 0
  bool degenerate = false;  // numerator vanishes (sin r = 0)
};
CriticalAlpha critical_alpha_double(double a, double b, double xi);

struct XiReport {
  double alpha_b = 0;
  std::vector<double> roots;  // roots of 1 - (2 alpha b / 3) x^2 (1-x)^2 in (0,1)
  double stated_threshold = 6;
  double extremum_threshold = 24;
  bool thresholds_disagree = true;
  // Roots of the mu -> -b limit of the reduced characteristic function,
  // 1 - (alpha b / (3a)) x^2 (1-x)^2; two-root regime from alpha b / a = 48.
  std::vector<double> limit_roots;
  double limit_threshold = 48;
};
XiReport xi_special_report(double a, double b, double alpha);

// First-order beta shift of mu_n^{+/-} for n <= n0: -/+ 2 sin^2(n pi xi) beta / sqrt(b^2 - 4 a n^4 pi^4).
double beta_shift(double a, double b, double xi, double beta, int n, Sign s);
// Alternative shift law: +/- 2 sin^2(2 n pi xi) beta / sqrt(b^2 - 4 a n^4 pi^4).
double beta_shift_alt(double a, double b, double xi, double beta, int n, Sign s);

}  // namespace pointbeam
