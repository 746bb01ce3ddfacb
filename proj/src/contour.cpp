// Copyright 2026 The pointbeam Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <limits>

#include "pointbeam/chareq.hpp"
#include "pointbeam/spectrum.hpp"

namespace pointbeam {

namespace {

double wrap(double d) {
  while (d > pi) d -= 2 * pi;
  while (d <= -pi) d += 2 * pi;
  return d;
}

class PhaseWalker {
 public:
  explicit PhaseWalker(const BeamParams& p) : p_(p) {}

  double edge(cplx z0, cplx z1) {
    constexpr int initial = 32;
    z0_ = z0;
    dz_ = z1 - z0;
    double total = 0;
    double t0 = 0, a0 = eval(0);
    for (int k = 1; k <= initial; ++k) {
      const double t1 = static_cast<double>(k) / initial;
      const double a1 = eval(t1);
      total += refine(t0, a0, t1, a1);
      t0 = t1;
      a0 = a1;
    }
    return total;
  }

  double min_normalized = std::numeric_limits<double>::infinity();
  std::size_t samples = 0;

 private:
  double eval(double t) {
    const auto r = reduced_char(p_, z0_ + t * dz_);
    ++samples;
    min_normalized = std::min(min_normalized, r.normalized());
    return std::arg(r.D);
  }

  double refine(double t0, double a0, double t1, double a1) {
    const double d = wrap(a1 - a0);
    if (std::abs(d) < pi / 2) return d;
    if (samples > kMaxContourSamples || t1 - t0 < 1e-15)
      throw Error(ErrorCode::NonConvergentPhase, "phase refinement exceeded the sample budget");
    const double tm = 0.5 * (t0 + t1);
    const double am = eval(tm);
    return refine(t0, a0, tm, am) + refine(tm, am, t1, a1);
  }

  const BeamParams& p_;
  cplx z0_{}, dz_{};
};

}  // namespace

ContourStats count_zeros_stats(const BeamParams& p, const ContourBox& box) {
  PhaseWalker w(p);
  const cplx c1 = box.lo, c2(box.hi.real(), box.lo.imag()), c3 = box.hi,
             c4(box.lo.real(), box.hi.imag());
  const double total = w.edge(c1, c2) + w.edge(c2, c3) + w.edge(c3, c4) + w.edge(c4, c1);
  const double turns = total / (2 * pi);
  ContourStats s;
  s.winding = static_cast<int>(std::lround(turns));
  s.min_normalized = w.min_normalized;
  s.samples = w.samples;
  if (std::abs(turns - s.winding) > 0.25)
    throw Error(ErrorCode::NonConvergentPhase, "winding number is not near an integer");
  return s;
}

int count_zeros(const BeamParams& p, const ContourBox& box) {
  const auto s = count_zeros_stats(p, box);
  if (s.min_normalized < kBoundaryTolerance)
    throw Error(ErrorCode::BoundaryTooClose, "a root lies within tolerance of the contour");
  return s.winding;
}

}  // namespace pointbeam
