#include <doctest.h>

#include <algorithm>
#include <chrono>

#include "pointbeam/chareq.hpp"
#include "pointbeam/eigenfunctions.hpp"
#include "pointbeam/simulator.hpp"
#include "pointbeam/spectrum.hpp"
#include "test_support.hpp"

using namespace pointbeam;
using namespace testing;

namespace {

const EigenRecord& find(const SpectrumResult& s, int n, Sign sg) {
  for (const auto& e : s.eigenvalues)
    if (e.n == n && e.sign == sg) return e;
  throw std::runtime_error("mode missing");
}

ContourBox box_around(cplx c, double r) { return {c - cplx(r, r), c + cplx(r, r)}; }

}  // namespace

TEST_SUITE("spectrum") {
  TEST_CASE("undamped spectrum examples") {
    const auto s = undamped_spectrum(1, 1, 3);
    REQUIRE(s.size() == 6);
    CHECK(std::abs(s[0].point.mu - cplx(-0.5, 9.8570)) < 1e-4);
    CHECK(std::abs(s[1].point.mu - cplx(-0.5, -9.8570)) < 1e-4);
    for (const auto& e : s) CHECK(rel(e.point.mu, closed_mu(1, 1, e.n, e.sign == Sign::plus)) < 1e-15);

    const auto d = undamped_spectrum(1, 2 * pi * pi, 1);
    CHECK(d[0].alg_mult_estimate == 2);
    CHECK(std::abs(d[0].point.mu + pi * pi) < 1e-12);

    const auto o = undamped_spectrum(1, 25, 2);
    for (const auto& e : o) {
      const cplx ref = closed_mu(1, 25, e.n, e.sign == Sign::plus);
      CHECK(rel(e.point.mu, ref) < 1e-15);
      CHECK((e.point.mu.imag() == 0) == (e.n == 1));
    }
    CHECK(o.size() == 4);
  }

  TEST_CASE("count_zeros") {
    const auto p0 = make_params(1, 1, 0, 0, kXi);
    CHECK(count_zeros(p0, box_around(closed_mu(1, 1, 1, true), 0.3)) == 1);
    CHECK(count_zeros(p0, {cplx(0.01, -200), cplx(50, 200)}) == 0);
    const auto p = make_params(1, 1, 0.05, 0, kXi);
    CHECK(count_zeros(p, box_around(cplx(-0.5, 9.857), 0.3)) == 1);
    CHECK(count_zeros(p, {cplx(-2, 0.5), cplx(-0.01, 45)}) == 2);
    // Edge through an undamped root.
    const cplx r = closed_mu(1, 1, 2, true);
    try {
      count_zeros(p0, {cplx(r.real() - 1, r.imag()), cplx(r.real() + 1, r.imag() + 1)});
      FAIL("boundary through a root accepted");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::BoundaryTooClose);
    }
  }

  TEST_CASE("refine_root") {
    const auto p0 = make_params(1, 1, 0, 0, kXi);
    const auto r0 = refine_root(p0, closed_mu(1, 1, 3, true));
    CHECK(r0.converged);
    CHECK(r0.iterations <= 2);
    CHECK(r0.record.point.residual <= 1e-13);

    const auto p = make_params(1, 1, 0.05, 0, kXi);
    const auto r = refine_root(p, cplx(-0.5, 9.86));
    CHECK(r.converged);
    const auto oracle = modal_eigen_oracle(p, 128);
    double best = 1e300;
    for (auto z : oracle) best = std::min(best, std::abs(z - r.record.point.mu));
    CHECK(best < 1e-6);
    CHECK(r.record.alg_mult_estimate == 1);
    CHECK_THROWS_AS(refine_root(p, cplx(-0.5, 40), 1e-3), Error);
  }

  TEST_CASE("refine_root at the engineered point -b/2 finds a simple root") {
    const double b = 4.0;
    const auto ca = critical_alpha_double(1, b, 0.3);
    REQUIRE(ca.admissible);
    const auto p = make_params(1, b, ca.alpha, 0, 0.3);
    const auto r = refine_root(p, cplx(-b / 2, 0));
    CHECK(r.converged);
    CHECK(std::abs(r.record.point.mu + b / 2) < 1e-10);
    CHECK(r.record.alg_mult_estimate == 1);
  }

  TEST_CASE("alpha = 0 gives the closed forms") {
    for (double b : {1.0, 25.0, 100.0}) {
      const auto p = make_params(1, b, 0, 0, kXi);
      const auto s = compute_spectrum(p, 16);
      for (const auto& e : s.eigenvalues)
        CHECK(std::abs(e.point.mu - closed_mu(1, b, e.n, e.sign == Sign::plus)) <= 1e-12 * std::max(1.0, std::abs(e.point.mu)));
      const double expect = b <= 2 * pi * pi ? -b / 2 : 0.5 * (-b + std::sqrt(b * b - 4 * std::pow(pi, 4)));
      CHECK(s.abscissa == doctest::Approx(expect).epsilon(1e-13));
    }
  }

  TEST_CASE("small alpha against the first-order expansion") {
    const auto p = make_params(1, 1, 1e-3, 0, kXi);
    const auto s = compute_spectrum(p, 6);
    for (const auto& e : s.eigenvalues) {
      const cplx pm = perturbation_mu(1, 1, kXi, 1e-3, e.n, e.sign);
      CHECK(std::abs(e.point.mu.real() - pm.real()) < 1e-5);
    }
  }

  TEST_CASE("alpha = 0.05 spectrum matches the oracle and reconciles") {
    const auto p = make_params(1, 1, 0.05, 0, kXi);
    const auto s = compute_spectrum(p, 10);
    const auto oracle = modal_eigen_oracle(p, 256);
    for (const auto& e : s.eigenvalues) {
      double best = 1e300;
      for (auto z : oracle) best = std::min(best, std::abs(z - e.point.mu));
      CHECK(best < 1e-6);
    }
    int contour = 0, found = 0;
    for (const auto& t : s.diagnostics.tiles) {
      CHECK(t.contour_count == t.found);
      contour += t.contour_count;
      found += t.found;
    }
    CHECK(contour == found);
    CHECK(s.diagnostics.contour_total == s.diagnostics.found_in_region);
  }

  TEST_CASE("left half-plane and conjugate pairing") {
    for (double alpha : {0.01, 0.2, 1.0, 5.0}) {
      const auto p = make_params(1, 1, alpha, 0, kXi);
      const auto s = compute_spectrum(p, 12);
      for (const auto& e : s.eigenvalues) {
        CHECK(e.point.mu.real() < -1e-8);
        bool paired = false;
        for (const auto& f : s.eigenvalues)
          paired = paired || std::abs(f.point.mu - std::conj(e.point.mu)) < 1e-10 * std::abs(e.point.mu);
        CHECK(paired);
      }
    }
  }

  TEST_CASE("large-n localization") {
    const auto p = make_params(1, 1, 0.05, 0, kXi);
    const auto s = compute_spectrum(p, 32);
    double cmin = 1e300, cmax = 0;
    for (int n = 8; n <= 32; ++n) {
      const double d = std::abs(find(s, n, Sign::plus).point.lambda - n * pi);
      const double c = d * n;
      cmin = std::min(cmin, c);
      cmax = std::max(cmax, c);
    }
    CHECK(cmax < 1.0);
    CHECK(cmin > 0);
  }

  TEST_CASE("perturbation error is second order") {
    std::vector<double> as, errs;
    for (double alpha : {1e-4, 3e-4, 1e-3, 3e-3, 1e-2}) {
      const auto p = make_params(1, 1, alpha, 0, kXi);
      const auto s = compute_spectrum(p, 3);
      const cplx pm = perturbation_mu(1, 1, kXi, alpha, 2, Sign::plus);
      as.push_back(alpha);
      errs.push_back(std::abs(find(s, 2, Sign::plus).point.mu - pm));
    }
    CHECK(loglog_slope(as, errs) == doctest::Approx(2).epsilon(0.05));
  }

  TEST_CASE("perturbation formulas") {
    CHECK(std::abs(perturbation_mu(1, 1, kXi, 0, 1, Sign::plus) - closed_mu(1, 1, 1, true)) < 1e-14);
    const cplx pr = perturbation_mu_alt(1, 1, 0.25, 1e-3, 1, Sign::plus);
    CHECK(pr.real() == doctest::Approx(-0.5 - 0.5e-3).epsilon(1e-12));
    const cplx pr2 = perturbation_mu_alt(1, 1, kXi, 1e-3, 1, Sign::plus);
    CHECK(pr2.real() == doctest::Approx(-0.5 - 0.5 * std::pow(std::sin(2 * pi * kXi), 2) * 1e-3).epsilon(1e-12));
    const cplx c = perturbation_mu(1, 1, kXi, 1e-3, 1, Sign::plus);
    CHECK(c.real() == doctest::Approx(-0.5 - std::pow(std::sin(pi * kXi), 2) * 1e-3).epsilon(1e-9));
    CHECK_THROWS_AS(perturbation_mu(1, 2 * pi * pi, 0.3, 1e-3, 1, Sign::plus), Error);
  }

  TEST_CASE("track_alpha") {
    const auto p0 = make_params(1, 1, 0, 0, kXi);
    const auto z = track_alpha(p0, 0.0, 1, 4);
    for (const auto& br : z.branches)
      CHECK(std::abs(br.path.back().record.point.mu - closed_mu(1, 1, br.n, br.sign == Sign::plus)) < 1e-12);

    const auto t = track_alpha(p0, 0.1, 20, 4);
    const auto s = compute_spectrum(make_params(1, 1, 0.1, 0, kXi), 4);
    for (const auto& br : t.branches) {
      if (br.n != 1 || br.sign != Sign::plus) continue;
      CHECK(br.path.back().alpha == doctest::Approx(0.1));
      CHECK(std::abs(br.path.back().record.point.mu - find(s, 1, Sign::plus).point.mu) < 1e-10);
      // Re-part slope at alpha = 0 from the first step.
      const double slope = (br.path[1].record.point.mu.real() + 0.5) / br.path[1].alpha;
      CHECK(slope == doctest::Approx(-std::pow(std::sin(pi * kXi), 2)).epsilon(2e-2));
    }
    CHECK(t.collisions.empty());
  }

  TEST_CASE("spectral abscissa") {
    const auto s1 = compute_spectrum(make_params(1, 1, 0, 0, kXi), 8);
    const auto a1 = spectral_abscissa(s1);
    CHECK(a1.value == doctest::Approx(-0.5));
    CHECK(a1.caveat);
    const auto a25 = spectral_abscissa(compute_spectrum(make_params(1, 25, 0, 0, kXi), 8));
    CHECK(a25.value == doctest::Approx(-4.8292).epsilon(1e-4));
    const auto a100 = spectral_abscissa(compute_spectrum(make_params(1, 100, 0, 0, kXi), 8));
    const double ref = -2 * std::pow(pi, 4) / (100 + std::sqrt(10000 - 4 * std::pow(pi, 4)));
    CHECK(a100.value == doctest::Approx(ref).epsilon(1e-12));
    CHECK(a100.value == doctest::Approx(-0.983769).epsilon(1e-6));
    CHECK(a100.value > a25.value);
  }

  TEST_CASE("alpha = 0 runtime") {
    const auto t0 = std::chrono::steady_clock::now();
    compute_spectrum(make_params(1, 1, 0, 0, kXi), 16);
    CHECK(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() < 1.0);
  }
}
