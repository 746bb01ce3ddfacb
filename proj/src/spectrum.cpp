// Copyright 2026 The pointbeam Authors
// SPDX-License-Identifier: Apache-2.0

#include "pointbeam/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pointbeam/chareq.hpp"

namespace pointbeam {

namespace {

constexpr int kMaxNewton = 50;
constexpr double kNewtonTol = 1e-12;
constexpr double kDoubleRootRatio = 1e-7;
constexpr int kMaxSearchDepth = 6;

bool same_root(cplx x, cplx y) {
  return std::abs(x - y) <= 1e-8 * std::max(1.0, std::abs(x));
}

Sign sign_of(cplx mu, double b) {
  if (mu.imag() != 0) return mu.imag() > 0 ? Sign::plus : Sign::minus;
  return mu.real() >= -b / 2 ? Sign::plus : Sign::minus;
}

// Upper-half-plane level of mode n at alpha = 0 (0 for overdamped modes).
double level(const BeamParams& p, int n) {
  return std::abs(closed_form_mu(p.a, p.b, n, Sign::plus).imag());
}

bool sort_key_less(const EigenRecord& x, const EigenRecord& y) {
  const double ix = std::abs(x.point.mu.imag()), iy = std::abs(y.point.mu.imag());
  if (ix != iy) return ix < iy;
  if (x.n != y.n) return x.n < y.n;
  if (x.sign != y.sign) return x.sign == Sign::plus;
  return x.point.mu.real() > y.point.mu.real();
}

EigenRecord conjugate_record(const EigenRecord& r) {
  EigenRecord c = r;
  c.point.mu = std::conj(r.point.mu);
  c.point.lambda = std::conj(r.point.lambda);
  c.sign = r.sign == Sign::plus ? Sign::minus : Sign::plus;
  return c;
}

}  // namespace

RefineResult refine_root(const BeamParams& p, cplx mu0, std::optional<double> basin_radius) {
  RefineResult out;
  cplx mu = mu0;
  auto r = reduced_char(p, mu);
  int it = 0;
  while (it < kMaxNewton) {
    if (r.D == 0.0) {
      out.converged = true;
      break;
    }
    const cplx step = r.D / r.dD;
    if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
    mu -= step;
    if (mu0.imag() == 0 && std::abs(mu.imag()) <= 1e-12 * std::max(1.0, std::abs(mu)))
      mu.imag(0.0);
    ++it;
    r = reduced_char(p, mu);
    if (std::abs(step) <= kNewtonTol * std::max(1.0, std::abs(mu))) {
      out.converged = true;
      break;
    }
  }
  out.iterations = it;
  out.derivative_ratio = std::abs(r.dD) * std::max(1.0, std::abs(mu)) / r.scale;

  auto& rec = out.record;
  rec.point.mu = mu;
  rec.point.lambda = r.lambda;
  rec.point.residual = r.normalized();
  rec.point.degenerate = r.lambda == 0.0;
  rec.n = std::max(1, static_cast<int>(std::lround(std::abs(r.lambda) / pi)));
  rec.sign = sign_of(mu, p.b);
  rec.alg_mult_estimate = out.derivative_ratio < kDoubleRootRatio ? 2 : 1;
  rec.provenance = Provenance::contour;

  if (basin_radius && std::abs(mu - mu0) > *basin_radius)
    throw Error(ErrorCode::DriftedOutOfBasin, "Newton iterate left the seeding box");
  return out;
}

std::vector<EigenRecord> undamped_spectrum(double a, double b, int n_max) {
  std::vector<EigenRecord> out;
  out.reserve(2 * static_cast<std::size_t>(std::max(n_max, 0)));
  for (int n = 1; n <= n_max; ++n) {
    const double k = n * pi;
    const double disc = b * b - 4 * a * k * k * k * k;
    const bool boundary = std::abs(disc) <= 1e-10 * b * b;
    for (Sign s : {Sign::plus, Sign::minus}) {
      EigenRecord r;
      r.point.mu = boundary ? cplx(-b / 2, 0.0) : closed_form_mu(a, b, n, s);
      r.point.lambda = k;
      r.n = n;
      r.sign = s;
      r.alg_mult_estimate = boundary ? 2 : 1;
      r.provenance = Provenance::closed_form;
      out.push_back(r);
    }
  }
  return out;
}

namespace {

struct Region {
  double left = 0, right = 0;
  std::vector<double> lines;  // lines[0] = half-height of tile 0, then upper tile tops
};

int known_inside(const std::vector<EigenRecord>& roots, const ContourBox& box) {
  int c = 0;
  for (const auto& r : roots) c += box.contains(r.point.mu) ? 1 : 0;
  return c;
}

// Recursive quadrisection looking for roots the seeds missed.
void search_box(const BeamParams& p, const ContourBox& box, std::vector<EigenRecord>& roots,
                int& added) {
  ContourStats st;
  try {
    st = count_zeros_stats(p, box);
  } catch (const Error&) {
    return;
  }
  if (st.min_normalized < kBoundaryTolerance) return;
  if (st.winding <= known_inside(roots, box)) return;

  const cplx center = 0.5 * (box.lo + box.hi);
  const auto rr = refine_root(p, center);
  if (rr.converged && box.contains(rr.record.point.mu)) {
    bool dup = false;
    for (const auto& r : roots) dup = dup || same_root(r.point.mu, rr.record.point.mu);
    if (!dup) {
      roots.push_back(rr.record);
      if (rr.record.point.mu.imag() != 0) roots.push_back(conjugate_record(rr.record));
      ++added;
      if (st.winding <= known_inside(roots, box)) return;
    }
  }
  if (box.depth >= kMaxSearchDepth) return;
  const double xm = center.real(), ym = center.imag();
  // Offsets keep child edges off the parent's center, where Newton may have landed.
  const double ox = 1e-3 * (box.hi.real() - box.lo.real());
  const double oy = 1e-3 * (box.hi.imag() - box.lo.imag());
  const double xs = xm + ox, ys = ym + oy;
  ContourBox kids[4] = {
      {box.lo, {xs, ys}, box.depth + 1},
      {{xs, box.lo.imag()}, {box.hi.real(), ys}, box.depth + 1},
      {{box.lo.real(), ys}, {xs, box.hi.imag()}, box.depth + 1},
      {{xs, ys}, box.hi, box.depth + 1},
  };
  for (const auto& k : kids) search_box(p, k, roots, added);
}

}  // namespace

SpectrumResult compute_spectrum(const BeamParams& p, int n_max, Exec exec) {
  validate(p);
  if (n_max < 1) throw Error(ErrorCode::InvalidParams, "n_max must be >= 1");
  const int n0 = overdamped_count(p.a, p.b);
  const int neff = std::max(n_max, n0);
  const bool undamped = p.alpha == 0 && p.beta == 0;

  SpectrumResult res;
  res.params = p;
  res.n_max = n_max;
  res.diagnostics.n_effective = neff;

  const auto seeds = undamped_spectrum(p.a, p.b, neff);
  std::vector<EigenRecord> roots;
  if (undamped) {
    roots = seeds;
  } else {
    // Real modes refine both roots; complex modes refine the upper one and mirror it.
    std::vector<EigenRecord> tasks;
    for (const auto& s : seeds)
      if (s.n <= n0 || s.sign == Sign::plus) tasks.push_back(s);
    std::vector<RefineResult> refined(tasks.size());
    for_each_index(exec, static_cast<std::ptrdiff_t>(tasks.size()), [&](std::ptrdiff_t i) {
      cplx seed = tasks[i].point.mu;
      if (tasks[i].alg_mult_estimate == 2)
        seed += (tasks[i].sign == Sign::plus ? 1e-3 : -1e-3) * std::max(1.0, p.b);
      refined[i] = refine_root(p, seed);
    });
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      if (!refined[i].converged) continue;
      EigenRecord r = refined[i].record;
      r.n = tasks[i].n;
      r.sign = tasks[i].n <= n0 ? sign_of(r.point.mu, p.b) : Sign::plus;
      bool dup = false;
      for (const auto& q : roots) dup = dup || same_root(q.point.mu, r.point.mu);
      if (dup) continue;
      roots.push_back(r);
      if (r.point.mu.imag() != 0) roots.push_back(conjugate_record(r));
    }
  }

  // Tile layout between consecutive seed levels.
  Region reg;
  reg.left = -2 * p.b;
  for (const auto& r : roots) reg.left = std::min(reg.left, 1.25 * r.point.mu.real());
  reg.right = 0;
  reg.lines.push_back(0.5 * level(p, n0 + 1));
  for (int n = n0 + 1; n <= neff; ++n) reg.lines.push_back(0.5 * (level(p, n) + level(p, n + 1)));

  auto tile_box = [&](std::size_t k) {
    if (k == 0) return ContourBox{{reg.left, -reg.lines[0]}, {reg.right, reg.lines[0]}};
    return ContourBox{{reg.left, reg.lines[k - 1]}, {reg.right, reg.lines[k]}};
  };

  const std::size_t ntiles = reg.lines.size();
  std::vector<ContourStats> stats(ntiles);
  for (int round = 0;; ++round) {
    for_each_index(exec, static_cast<std::ptrdiff_t>(ntiles),
                   [&](std::ptrdiff_t k) { stats[k] = count_zeros_stats(p, tile_box(k)); });
    bool moved = false;
    for (std::size_t k = 0; k < ntiles; ++k) {
      if (stats[k].min_normalized >= kBoundaryTolerance) continue;
      // Nudge the tile's edges; every edge a root can sit on is nudged a little.
      const double span = reg.lines[k] - (k == 0 ? -reg.lines[0] : reg.lines[k - 1]);
      reg.lines[k] += 1e-3 * span;
      if (k > 0) reg.lines[k - 1] -= 1e-3 * span;
      reg.left -= 1e-3 * p.b;
      moved = true;
    }
    if (!moved) break;
    if (round >= 8)
      throw Error(ErrorCode::AuditMismatch, "could not clear contour edges of roots");
  }

  int added = 0;
  for (std::size_t k = 0; k < ntiles; ++k) {
    const auto box = tile_box(k);
    if (stats[k].winding > known_inside(roots, box)) {
      std::vector<EigenRecord> extra = roots;
      int before = static_cast<int>(extra.size());
      search_box(p, ContourBox{box.lo, box.hi, 0}, extra, added);
      for (std::size_t i = static_cast<std::size_t>(before); i < extra.size(); ++i) {
        EigenRecord r = extra[i];
        int best = 1;
        double dist = std::numeric_limits<double>::infinity();
        for (int n = 1; n <= neff + 1; ++n) {
          const double d = std::abs(std::abs(r.point.mu.imag()) - level(p, n));
          if (d < dist) dist = d, best = n;
        }
        r.n = best;
        r.sign = sign_of(r.point.mu, p.b);
        roots.push_back(r);
      }
    }
  }

  auto& diag = res.diagnostics;
  diag.added_by_search = added;
  diag.region_left = reg.left;
  diag.region_top = reg.lines.back();
  for (std::size_t k = 0; k < ntiles; ++k) {
    const auto box = tile_box(k);
    TileAudit t;
    t.im_lo = box.lo.imag();
    t.im_hi = box.hi.imag();
    t.contour_count = stats[k].winding;
    t.found = known_inside(roots, box);
    diag.tiles.push_back(t);
    const int mult = k == 0 ? 1 : 2;
    diag.contour_total += mult * t.contour_count;
    diag.found_in_region += mult * t.found;
  }
  diag.outside_region = static_cast<int>(roots.size()) - diag.found_in_region;
  for (const auto& t : diag.tiles) {
    if (t.contour_count != t.found)
      throw Error(ErrorCode::AuditMismatch,
                  "contour count " + std::to_string(t.contour_count) + " vs " +
                      std::to_string(t.found) + " refined roots in Im [" +
                      std::to_string(t.im_lo) + ", " + std::to_string(t.im_hi) + "]");
  }

  for (const auto& r : roots) diag.max_residual = std::max(diag.max_residual, r.point.residual);
  std::sort(roots.begin(), roots.end(), sort_key_less);
  res.eigenvalues = std::move(roots);
  const auto ab = spectral_abscissa(res);
  res.abscissa = ab.value;
  res.abscissa_caveat = ab.caveat;
  return res;
}

TrackResult track_alpha(const BeamParams& params0, double alpha_target, int steps, int n_max,
                        Exec exec) {
  validate(params0);
  if (params0.alpha != 0) throw Error(ErrorCode::InvalidParams, "track_alpha starts at alpha = 0");
  if (steps < 1) throw Error(ErrorCode::InvalidParams, "steps must be >= 1");
  const auto seeds = undamped_spectrum(params0.a, params0.b, n_max);

  TrackResult out;
  out.branches.resize(seeds.size());
  const double dalpha = alpha_target / steps;

  for_each_index(exec, static_cast<std::ptrdiff_t>(seeds.size()), [&](std::ptrdiff_t i) {
    const auto& seed = seeds[i];
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < seeds.size(); ++j)
      if (static_cast<std::ptrdiff_t>(j) != i)
        gap = std::min(gap, std::abs(seeds[j].point.mu - seed.point.mu));
    const double jump_limit = 0.5 * gap;

    auto& br = out.branches[i];
    br.n = seed.n;
    br.sign = seed.sign;
    BeamParams p = params0;
    EigenRecord cur = seed;
    br.path.push_back({0.0, cur});
    double a_cur = 0;
    for (int k = 1; k <= steps; ++k) {
      const double a_k = k * dalpha;
      double h = dalpha;
      while (std::abs(a_k - a_cur) > 0) {
        const double a_next = std::abs(h) >= std::abs(a_k - a_cur) ? a_k : a_cur + h;
        p.alpha = a_next;
        const auto rr = refine_root(p, cur.point.mu);
        const bool ok = rr.converged && rr.iterations <= 8 &&
                        std::abs(rr.record.point.mu - cur.point.mu) <= jump_limit;
        if (!ok) {
          h /= 2;
          if (std::abs(h) < 1e-8 * std::abs(dalpha))
            throw Error(ErrorCode::NoConvergence, "alpha continuation stalled");
          continue;
        }
        cur = rr.record;
        cur.n = seed.n;
        cur.sign = seed.sign;
        cur.provenance = Provenance::tracked;
        a_cur = a_next;
        h = std::min(std::abs(2 * h), std::abs(dalpha)) * (dalpha < 0 ? -1 : 1);
      }
      br.path.push_back({a_k, cur});
    }
  });

  for (std::size_t i = 0; i < out.branches.size(); ++i)
    for (std::size_t j = i + 1; j < out.branches.size(); ++j)
      for (std::size_t k = 0; k < out.branches[i].path.size(); ++k) {
        const double d = std::abs(out.branches[i].path[k].record.point.mu -
                                  out.branches[j].path[k].record.point.mu);
        if (d < 1e-8) {
          out.collisions.push_back({i, j, out.branches[i].path[k].alpha, d});
          break;
        }
      }
  return out;
}

namespace {

void check_simple(double a, double b, int n) {
  const double k = n * pi;
  if (std::abs(b * b - 4 * a * k * k * k * k) < 1e-8)
    throw Error(ErrorCode::NearDoubleRoot, "b = 2 sqrt(a) n^2 pi^2");
}

}  // namespace

cplx perturbation_mu(double a, double b, double xi, double alpha, int n, Sign s) {
  check_simple(a, b, n);
  const cplx mu0 = closed_form_mu(a, b, n, s);
  const double sn = std::sin(n * pi * xi);
  return mu0 - 2 * alpha * sn * sn * mu0 / (2.0 * mu0 + b);
}

cplx perturbation_mu_alt(double a, double b, double xi, double alpha, int n, Sign s) {
  check_simple(a, b, n);
  const double k = n * pi;
  const double disc = b * b - 4 * a * k * k * k * k;
  const double s2 = std::pow(std::sin(2 * n * pi * xi), 2);
  const double pm = s == Sign::plus ? 1 : -1;
  const cplx I(0, 1);
  if (disc < 0) {
    const double R = std::sqrt(-disc);
    const cplx z = -b + pm * I * R;
    return 0.5 * z + pm * I * s2 / (2 * R) * z * alpha;
  }
  const double R = std::sqrt(disc);
  const double z = -b + pm * R;
  return 0.5 * z - pm * s2 / (2 * R) * z * alpha;
}

}  // namespace pointbeam
