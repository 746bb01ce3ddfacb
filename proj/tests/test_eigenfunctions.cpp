#include <doctest.h>

#include "pointbeam/eigenfunctions.hpp"
#include "pointbeam/spectrum.hpp"
#include "test_support.hpp"

using namespace pointbeam;
using namespace testing;

namespace {

EigenRecord mode(const SpectrumResult& s, int n) {
  for (const auto& e : s.eigenvalues)
    if (e.n == n && e.sign == Sign::plus) return e;
  throw std::runtime_error("mode missing");
}

}  // namespace

TEST_SUITE("eigenfunctions") {
  TEST_CASE("phi satisfies the boundary-value problem") {
    const auto p = make_params(1, 1, 0.05, 0, kXi);
    const auto s = compute_spectrum(p, 8);
    for (int n = 1; n <= 8; ++n) {
      const auto pair = eval_phi(p, mode(s, n).point, 512);
      const auto r = eigen_residuals(p, pair);
      CAPTURE(n);
      CHECK(r.ode <= 1e-6);
      CHECK(r.boundary <= 1e-10);
      CHECK(r.continuity <= 1e-10);
      CHECK(r.jump <= 1e-8);
      CHECK(pair.first.size() == 513);
      CHECK(pair.first.marked == nearest_node(512, kXi));
      for (std::size_t j = 0; j < pair.first.size(); ++j)
        CHECK(std::abs(pair.second[j] - pair.mu * pair.first[j]) == 0);
    }
  }

  TEST_CASE("phi stays bounded for large lambda") {
    const auto p = make_params(1, 1, 0.05, 0, kXi);
    const auto s = compute_spectrum(p, 40);
    const auto pair = eval_phi(p, mode(s, 40).point, 2048);
    CHECK(std::isfinite(pair.first.max_abs()));
    // Same normalization as psi: the ratio of sizes stays of order one.
    const double ratio = pair.first.max_abs() / eval_psi(40, Sign::plus, p, 2048).first.max_abs();
    CHECK(ratio > 0.1);
    CHECK(ratio < 10);
  }

  TEST_CASE("phi errors") {
    const auto p = make_params(1, 1, 0.05, 0, kXi);
    SpectralPoint off;
    off.mu = cplx(-0.5, 9.0);
    try {
      eval_phi(p, off, 256);
      FAIL("non-eigenvalue accepted");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ResidualTooLarge);
    }
    const auto p0 = make_params(1, 1, 0, 0, kXi);
    SpectralPoint und;
    und.mu = closed_mu(1, 1, 2, true);
    try {
      eval_phi(p0, und, 256);
      FAIL("degenerate lambda accepted");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::DegenerateTrig);
    }
  }

  TEST_CASE("psi shape and bounds") {
    const auto p = make_params(1, 1, 0, 0, kXi);
    for (int n : {1, 2, 5, 20}) {
      const auto psi = eval_psi(n, Sign::plus, p, 256);
      const double k = n * pi;
      const double amp = std::exp(k * (kXi - 2)) * std::sinh(k) * std::sin(k * (1 - kXi)) / (k * k);
      CHECK(psi.first[64].real() == doctest::Approx(amp * std::sin(k * 0.25)).epsilon(1e-12));
      CHECK(std::abs(psi.first[0]) == 0);
      CHECK(std::abs(psi.first[256]) < 1e-14);
      CHECK(psi.first.max_abs() <= std::abs(amp) * (1 + 1e-12));
      CHECK(std::abs(psi.second[64] - closed_mu(1, 1, n, true) * psi.first[64]) < 1e-12);
      const auto r = eigen_residuals(p, psi);
      CHECK(r.boundary <= 1e-12);
      CHECK(r.ode <= 1e-4);
    }
    const auto big = eval_psi(200, Sign::plus, p, 256);
    CHECK(std::isfinite(big.first.max_abs()));

    const auto re = eval_psi(3, Sign::plus, p, 128);
    const auto im = eval_psi(3, Sign::plus, p, 128, true);
    for (int j = 0; j <= 128; ++j) CHECK(std::abs(im.first[j] - cplx(0, -1) * re.first[j]) == 0);
    CHECK_THROWS_AS(eval_psi(0, Sign::plus, p, 128), Error);
  }

  TEST_CASE("phi tends to psi as alpha -> 0") {
    std::vector<double> d;
    for (double alpha : {1e-2, 1e-3, 1e-4}) {
      const auto p = make_params(1, 1, alpha, 0, kXi);
      const auto s = compute_spectrum(p, 4);
      for (int n = 1; n <= 3; ++n) {
        const auto h = hnorm_diff(p, mode(s, n), 1024);
        if (n == 2) d.push_back(h.aligned);
        CHECK(h.aligned < 1e-2);
        CHECK(std::abs(h.scale) > 0);
      }
    }
    REQUIRE(d.size() == 3);
    // The aligned distance is second order in alpha.
    CHECK(d[1] < d[0] / 50);
    CHECK(d[2] < d[1] / 50);
  }

  TEST_CASE("H-norm difference vanishes for alpha = 0") {
    const auto p = make_params(1, 1, 0, 0, kXi);
    const auto s = compute_spectrum(p, 5);
    for (int n = 1; n <= 5; ++n) CHECK(hnorm_diff(p, mode(s, n), 512).aligned <= 1e-20);
  }

  TEST_CASE("grid too coarse") {
    const auto p = make_params(1, 1, 0.3, 0, kXi);
    const auto s = compute_spectrum(p, 30);
    try {
      hnorm_diff(p, mode(s, 30), 16);
      FAIL("coarse grid accepted");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::GridTooCoarse);
    }
  }

  TEST_CASE("Riesz tail") {
    const auto p = make_params(1, 1, 0.05, 0, kXi);
    const auto r = riesz_tail_report(p, 4, 24);
    CHECK(r.rows.size() == 21);
    CHECK(r.consistent);
    CHECK(r.exponent <= -1.5);
    for (std::size_t i = 1; i < r.rows.size(); ++i) CHECK(r.rows[i].partial_sum >= r.rows[i - 1].partial_sum);

    const auto full = riesz_tail_report(p, 1, 24);
    CHECK(full.tail_fraction < 0.05);

    const auto z = riesz_tail_report(make_params(1, 1, 0, 0, kXi), 4, 12);
    CHECK(z.trivial);
    CHECK(z.consistent);

    const auto strong = riesz_tail_report(make_params(1, 1, 5, 0, kXi), 4, 16);
    CHECK(strong.rows.size() == 13);
    CHECK(std::isfinite(strong.exponent));

    CHECK_THROWS_AS(riesz_tail_report(p, 5, 4), Error);
  }

  TEST_CASE("loglog slope") {
    CHECK(loglog_slope({1, 2, 4, 8}, {3, 12, 48, 192}) == doctest::Approx(2));
  }
}
