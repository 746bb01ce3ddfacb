#include <doctest.h>

#include "pointbeam/chareq.hpp"
#include "pointbeam/simulator.hpp"
#include "pointbeam/spectrum.hpp"
#include "test_support.hpp"

using namespace pointbeam;
using namespace testing;

TEST_SUITE("special_values") {
  TEST_CASE("critical alpha makes -b/2 a root, but not a double one") {
    for (auto [b, xi] : {std::pair{4.0, 0.3}, std::pair{9.0, 0.41}, std::pair{30.0, 0.2}}) {
      const auto ca = critical_alpha_double(1, b, xi);
      CAPTURE(b);
      CHECK(ca.r == doctest::Approx(std::sqrt(b / 2)));
      if (!ca.admissible) continue;
      const auto p = make_params(1, b, ca.alpha, 0, xi);
      const cplx mu(-b / 2, 0);
      CHECK(std::abs(char_fn(p, mu).unscaled()) <= 1e-10 * char_term_scale(p, mu));
      // d lambda / d mu = 0 at -b/2, so G'(-b/2) = 2 sinh r sin r.
      const double expect = 2 * std::sinh(ca.r) * std::sin(ca.r);
      CHECK(std::abs(char_derivative(p, mu) - expect) <= 1e-6 * std::abs(expect));
      CHECK(std::abs(expect) > 1e-3);
    }
  }

  TEST_CASE("critical alpha degenerates at b = 2 pi^2") {
    const auto ca = critical_alpha_double(1, 2 * pi * pi, 0.3);
    CHECK(ca.degenerate);
    CHECK_FALSE(ca.admissible);
    CHECK(ca.r == doctest::Approx(pi));
  }

  TEST_CASE("xi report") {
    const auto r24 = xi_special_report(1, 24, 1);
    REQUIRE(r24.roots.size() == 1);
    CHECK(r24.roots[0] == doctest::Approx(0.5));
    CHECK(r24.thresholds_disagree);
    CHECK(r24.stated_threshold == 6);
    CHECK(r24.extremum_threshold == 24);

    CHECK(xi_special_report(1, 1, 1).roots.empty());

    const auto r48 = xi_special_report(1, 48, 1);
    REQUIRE(r48.roots.size() == 2);
    CHECK(r48.roots[0] == doctest::Approx(0.229402).epsilon(1e-6));
    CHECK(r48.roots[1] == doctest::Approx(0.770598).epsilon(1e-6));
    REQUIRE(r48.limit_roots.size() == 1);
    CHECK(r48.limit_roots[0] == doctest::Approx(0.5));
    for (double x : r48.roots) CHECK(1 - (2 * 48.0 / 3) * x * x * (1 - x) * (1 - x) == doctest::Approx(0).epsilon(1e-12));

    CHECK_THROWS_AS(xi_special_report(1, 1, 0), Error);
  }

  TEST_CASE("beta shift of overdamped modes") {
    const double b = 25, beta = 1e-3, xi = 0.3;
    const auto p = make_params(1, b, 0, beta, xi);
    const auto oracle = modal_eigen_oracle(p, 128);
    for (Sign s : {Sign::plus, Sign::minus}) {
      const cplx mu0 = closed_mu(1, b, 1, s == Sign::plus);
      cplx best = oracle.front();
      for (auto z : oracle)
        if (std::abs(z - mu0) < std::abs(best - mu0)) best = z;
      const double observed = best.real() - mu0.real();
      const double law = beta_shift(1, b, xi, beta, 1, s);
      CAPTURE(observed);
      CHECK(std::abs(observed - law) <= 0.05 * std::abs(law));
    }
    // The slow root moves left.
    CHECK(beta_shift(1, b, xi, beta, 1, Sign::plus) < 0);
  }

  TEST_CASE("alternative beta law") {
    const double b = 25, beta = 1e-3, xi = 0.3;
    const double v = beta_shift_alt(1, b, xi, beta, 1, Sign::plus);
    const double expect = 2 * std::pow(std::sin(2 * pi * xi), 2) * beta / std::sqrt(b * b - 4 * std::pow(pi, 4));
    CHECK(v > 0);
    CHECK(v == doctest::Approx(expect).epsilon(1e-14));
    CHECK_THROWS_AS(beta_shift(1, 1, xi, beta, 1, Sign::plus), Error);
    CHECK_THROWS_AS(beta_shift(1, 2 * pi * pi, xi, beta, 1, Sign::plus), Error);
  }
}
