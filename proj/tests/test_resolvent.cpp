#include <doctest.h>

#include "pointbeam/eigenfunctions.hpp"
#include "pointbeam/resolvent.hpp"
#include "pointbeam/spectrum.hpp"
#include "test_support.hpp"

using namespace pointbeam;
using namespace testing;

namespace {

cplx u1f(double x) { return std::sin(pi * x) + 0.3 * x * x * (1 - x); }
cplx v1f(double x) { return cplx(0, 1) * x * (1 - x); }

ResolventInput input(cplx mu, int M = 1024, double xi = kXi) {
  const int mark = nearest_node(M, xi);
  return {GridFunction::sample(M, u1f, mark), GridFunction::sample(M, v1f, mark), mu, u1f(xi)};
}

double max_diff(const GridFunction& x, const GridFunction& y) {
  double m = 0;
  for (std::size_t j = 0; j < x.size(); ++j) m = std::max(m, std::abs(x[j] - y[j]));
  return m;
}

}  // namespace

TEST_SUITE("resolvent") {
  TEST_CASE("kernel values and limits") {
    CHECK(std::abs(kernel_u0(1e-4, 0.5) - 0.125 / 6) < 1e-15);
    CHECK(std::abs(kernel_u0(1e-4, 0.5, 2.0) - 0.125 / 12) < 1e-15);
    CHECK(kernel_u0(cplx(2, 1), -0.1) == cplx(0));
    CHECK(kernel_u0(cplx(2, 1), 0.0) == cplx(0));
    CHECK_THROWS_AS(kernel_u0(0.0, 0.3), Error);
    const cplx l(3, 1);
    const double x = 0.7;
    const cplx closed = (std::sinh(l * x) - std::sin(l * x)) / (2.0 * l * l * l);
    CHECK(std::abs(kernel_u0(l, x) - closed) < 1e-14 * std::abs(closed));
    // Series and closed form agree across |l x| = 1.
    const cplx lb(1.0 / 0.999, 0);
    const cplx ser = kernel_u0(lb, 0.999 * 0.999), cl = (std::sinh(lb * 0.998001) - std::sin(lb * 0.998001)) / (2.0 * lb * lb * lb);
    CHECK(std::abs(ser - cl) < 1e-14);
  }

  TEST_CASE("kernel derivative rules") {
    for (cplx l : {cplx(0.5, 0.2), cplx(3, 1), cplx(8, -6)}) {
      for (double x : {0.1, 0.45, 0.9}) {
        CHECK(std::abs(kernel_u0(l, x, 1, 4) - std::pow(l, 4) * kernel_u0(l, x)) <= 1e-12 * std::abs(kernel_u0(l, x, 1, 4)));
        for (int d = 0; d < 4; ++d) {
          const double h = 1e-5;
          const cplx fd = (kernel_u0(l, x + h, 1, d) - kernel_u0(l, x - h, 1, d)) / (2 * h);
          CHECK(std::abs(fd - kernel_u0(l, x, 1, d + 1)) <= 1e-7 * std::max(1.0, std::abs(fd)));
        }
      }
      CHECK(std::abs(kernel_u0(l, 1e-9, 1, 3) - 1.0) < 1e-12);
      CHECK(std::abs(kernel_u0(l, 1e-9, 1, 2)) < 1e-8);
    }
  }

  TEST_CASE("convolution against the closed form") {
    const auto one = GridFunction::sample(1024, [](double) { return cplx(1); });
    for (double x : {0.25, kXi, 1.0}) {
      const double ref = ((std::cosh(x) - 1) - (1 - std::cos(x))) / 2;
      CHECK(std::abs(convolve_u0(1.0, one, x) - ref) < 1e-12);
    }
    const auto grid = convolve_u0_grid(1.0, one, 1, 0);
    for (int j = 0; j <= 1024; j += 64) {
      const double x = j / 1024.0;
      CHECK(std::abs(grid[j] - ((std::cosh(x) - 1) - (1 - std::cos(x))) / 2) < 1e-12);
    }
    // d = 4 adds f(x)/a.
    const cplx c4 = convolve_u0(1.0, one, 0.5, 1, 4), c0 = convolve_u0(1.0, one, 0.5, 1, 0);
    CHECK(std::abs(c4 - (c0 + 1.0)) < 1e-12);
    CHECK_THROWS_AS(convolve_u0(1.0, one, 1.5), Error);
    try {
      convolve_u0(1.0, GridFunction::sample(10, [](double) { return cplx(1); }), 0.5);
      FAIL("odd coarse grid accepted");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::GridTooCoarse);
    }
  }

  TEST_CASE("grid convolution equals the serial reference") {
    const auto f = GridFunction::sample(1024, u1f);
    for (int d : {0, 2, 4}) {
      const auto a = convolve_u0_grid(cplx(4, 2), f, 1.3, d);
      const auto b = convolve_u0_grid_reference(cplx(4, 2), f, 1.3, d);
      for (std::size_t j = 0; j < a.size(); ++j) CHECK(std::abs(a[j] - b[j]) <= 1e-13 * std::max(1.0, std::abs(b[j])));
    }
  }

  TEST_CASE("alpha = 0 determinant") {
    const auto p = make_params(1, 1, 0, 0, kXi);
    for (int i = 0; i < 50; ++i) {
      const cplx l(uniform(0.2, 10), uniform(-10, 10));
      const cplx ref = -8.0 * std::pow(l, 5) * std::sinh(l) * std::sin(l);
      CHECK(std::abs(det_alpha(p, l, cplx(-1, 3)).value() - ref) <= 1e-12 * std::abs(ref));
    }
  }

  TEST_CASE("determinant vanishes at eigenvalues") {
    const auto p = make_params(1, 1, 0.3, 0, kXi);
    const auto s = compute_spectrum(p, 6);
    for (const auto& e : s.eigenvalues) CHECK(det_alpha(p, e.point.lambda, e.point.mu).normalized() < 1e-11);
    CHECK(det_alpha(p, cplx(2, 0.5), mu_from_lambda(p, cplx(2, 0.5)).first).normalized() > 1e-3);
  }

  TEST_CASE("resolvent at mu = 1 + i") {
    const auto p = make_params(1, 1, 0.3, 0, kXi);
    const auto in = input(cplx(1, 1));
    const auto out = resolvent_apply(p, in);
    const auto& d = out.diagnostics;
    CHECK(d.u_at_0 <= 1e-12);
    CHECK(d.u_at_1 <= 1e-8);
    CHECK(d.u2_at_0 <= 1e-6);
    CHECK(d.u2_at_1 <= 1e-6);
    CHECK(d.continuity2 <= 1e-6);
    CHECK(d.jump <= 1e-5);
    CHECK(d.ode <= 1e-5);
    CHECK(resolvent_crosscheck(p, in, out) <= 1e-7);
    for (std::size_t j = 0; j < out.u.size(); ++j) CHECK(std::abs(out.v[j] - (in.mu * out.u[j] - in.u1[j])) < 1e-14);
  }

  TEST_CASE("resolvent with alpha = 0 and with beta") {
    for (auto p : {make_params(1, 1, 0, 0, kXi), make_params(1.5, 2, 0.2, 0.7, 0.3)}) {
      const auto in = input(cplx(-0.3, 4), 1024, p.xi);
      const auto out = resolvent_apply(p, in);
      CHECK(out.diagnostics.max() <= 1e-5);
      CHECK(resolvent_crosscheck(p, in, out) <= 1e-7);
    }
  }

  TEST_CASE("zero data and linearity") {
    const auto p = make_params(1, 1, 0.3, 0, kXi);
    ResolventInput z{GridFunction(256), GridFunction(256), cplx(1, 1), cplx(0)};
    CHECK(resolvent_apply(p, z).u.max_abs() == 0);

    auto a = input(cplx(2, -1), 512), b = a;
    for (auto& v : b.u1.samples) v = v * v;
    b.u1_at_xi = u1f(kXi) * u1f(kXi);
    ResolventInput sum = a;
    const cplx c(0.7, -2);
    for (int j = 0; j <= 512; ++j) {
      sum.u1[j] = a.u1[j] + c * b.u1[j];
      sum.v1[j] = a.v1[j] + c * b.v1[j];
    }
    sum.u1_at_xi = *a.u1_at_xi + c * *b.u1_at_xi;
    const auto ra = resolvent_apply(p, a), rb = resolvent_apply(p, b), rs = resolvent_apply(p, sum);
    double m = 0;
    for (int j = 0; j <= 512; ++j) m = std::max(m, std::abs(rs.u[j] - ra.u[j] - c * rb.u[j]));
    CHECK(m <= 1e-12 * rs.u.max_abs());
  }

  TEST_CASE("simple pole at an eigenvalue") {
    const auto p = make_params(1, 1, 0.3, 0, kXi);
    const auto s = compute_spectrum(p, 3);
    const cplx mu1 = s.eigenvalues.front().point.mu;
    std::vector<double> eps, norms;
    for (double e : {1e-2, 1e-3, 1e-4, 1e-5}) {
      eps.push_back(e);
      norms.push_back(resolvent_apply(p, input(mu1 + cplx(e, e))).u.max_abs());
    }
    CHECK(loglog_slope(eps, norms) == doctest::Approx(-1).epsilon(0.1));

    try {
      resolvent_apply(p, input(mu1));
      FAIL("eigenvalue accepted");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::AtEigenvalue);
    }
  }

  TEST_CASE("first resolvent identity") {
    const auto p = make_params(1, 1, 0.3, 0, kXi);
    const cplx mu(1, 1), nu(-0.5, 3);
    const auto F = input(mu);
    auto Fn = F;
    Fn.mu = nu;
    const auto Rm = resolvent_apply(p, F), Rn = resolvent_apply(p, Fn);
    ResolventInput G{Rn.u, Rn.v, mu, Rn.u_at_xi};
    const auto RmRn = resolvent_apply(p, G);
    double m = 0;
    for (std::size_t j = 0; j < Rm.u.size(); ++j)
      m = std::max(m, std::abs(Rm.u[j] - Rn.u[j] - (nu - mu) * RmRn.u[j]));
    CHECK(m <= 1e-6 * std::max(Rm.u.max_abs(), Rn.u.max_abs()));
  }

  TEST_CASE("the alternative explicit formula misses the boundary condition") {
    const auto p = make_params(1, 1, 0.3, 0, kXi);
    const auto in = input(cplx(1, 1));
    const auto alt = resolvent_apply_alt(p, in);
    const auto ok = resolvent_apply(p, in);
    CHECK(std::abs(alt[alt.M]) > 1e-3 * alt.max_abs());
    CHECK(max_diff(alt, ok.u) > 1e-3 * ok.u.max_abs());
  }

  TEST_CASE("large lambda is rejected") {
    const auto p = make_params(1, 1, 0.3, 0, kXi);
    CHECK_THROWS_AS(resolvent_apply(p, input(cplx(0, 2e5))), Error);
  }
}
