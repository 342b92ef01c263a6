#include "engel/elliptic.hpp"
#include "engel/errors.hpp"
#include "oracles.hpp"

#include <boost/math/special_functions/ellint_1.hpp>
#include <boost/math/special_functions/ellint_2.hpp>
#include <doctest.h>

#include <cmath>
#include <random>

using namespace engel;

TEST_CASE("complete integrals against Boost Legendre forms") {
  for (double m : {0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 0.99}) {
    const double k = std::sqrt(m);
    CHECK(complete_K(m) == doctest::Approx(boost::math::ellint_1(k)).epsilon(1e-14));
    CHECK(complete_E(m) == doctest::Approx(boost::math::ellint_2(k)).epsilon(1e-14));
  }
  // Near m = 1 the round trip through k = sqrt(m) costs Boost digits; use a
  // 30-digit reference instead.
  CHECK(complete_K(0.999999) == doctest::Approx(8.2940514636010622).epsilon(1e-15));
  CHECK(complete_K(0.0) == doctest::Approx(M_PI / 2).epsilon(1e-15));
  CHECK_THROWS_AS(complete_K(1.0), DomainError);
  CHECK_THROWS_AS(complete_K(1.5), DomainError);
}

TEST_CASE("complete integrals for negative parameter by quadrature") {
  for (double m : {-0.5, -2.0, -10.0, -40.0}) {
    CHECK(complete_K(m) == doctest::Approx(oracle::legendre_f(M_PI / 2, m)).epsilon(1e-13));
    CHECK(complete_E(m) == doctest::Approx(oracle::legendre_e(M_PI / 2, m)).epsilon(1e-13));
  }
}

TEST_CASE("Carlson forms at tabulated points") {
  // Carlson (1995) test values.
  CHECK(carlson_rf(1.0, 2.0, 0.0) == doctest::Approx(1.3110287771461).epsilon(1e-12));
  CHECK(carlson_rd(0.0, 2.0, 1.0) == doctest::Approx(1.7972103521034).epsilon(1e-12));
}

TEST_CASE("incomplete integrals match quadrature, including reduction by pi") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> phi(-12.0, 12.0), m(-5.0, 0.98);
  for (int i = 0; i < 200; ++i) {
    const double p = phi(rng), k2 = m(rng);
    CHECK(ellip_f(p, k2) == doctest::Approx(oracle::legendre_f(p, k2)).epsilon(1e-11));
    CHECK(ellip_e(p, k2) == doctest::Approx(oracle::legendre_e(p, k2)).epsilon(1e-11));
  }
}

TEST_CASE("Jacobi functions near zero match the Maclaurin series") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-0.7, 0.7), m(-1.5, 0.999);
  for (int i = 0; i < 500; ++i) {
    const double x = u(rng), k2 = m(rng);
    const JacobiBundle j = jacobi(x, k2);
    const oracle::Taylor t = oracle::jacobi_series(x, k2);
    CHECK(j.sn == doctest::Approx(t.sn).epsilon(1e-13));
    CHECK(j.cn == doctest::Approx(t.cn).epsilon(1e-13));
    CHECK(j.dn == doctest::Approx(t.dn).epsilon(1e-13));
  }
}

TEST_CASE("Jacobi bundle far from zero matches the defining ODE") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-15.0, 15.0), m(-3.0, 0.97);
  for (int i = 0; i < 60; ++i) {
    const double x = u(rng), k2 = m(rng);
    const JacobiBundle j = jacobi(x, k2);
    const auto ref = oracle::jacobi_ode(x, k2);
    CHECK(j.sn == doctest::Approx(ref[0]).epsilon(1e-9));
    CHECK(j.cn == doctest::Approx(ref[1]).epsilon(1e-9));
    CHECK(j.dn == doctest::Approx(ref[2]).epsilon(1e-9));
    CHECK(j.am == doctest::Approx(ref[3]).epsilon(1e-9));
    CHECK(j.eps == doctest::Approx(ref[4]).epsilon(1e-9));
  }
}

TEST_CASE("Pythagorean identities hold across the parameter range") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-50.0, 50.0), m(-20.0, 0.9999);
  double worst = 0.0;
  for (int i = 0; i < 20000; ++i) {
    const double k2 = m(rng);
    const JacobiBundle j = jacobi(u(rng), k2);
    worst = std::max(worst, std::abs(j.sn * j.sn + j.cn * j.cn - 1.0));
    worst = std::max(worst, std::abs(j.dn * j.dn + k2 * j.sn * j.sn - 1.0));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("special values and periodicity") {
  const double m = 0.6, K = complete_K(m);
  const JacobiBundle atK = jacobi(K, m);
  CHECK(atK.sn == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(atK.cn) < 1e-14);
  CHECK(atK.dn == doctest::Approx(std::sqrt(1.0 - m)).epsilon(1e-14));
  CHECK(atK.am == doctest::Approx(M_PI / 2).epsilon(1e-14));
  const JacobiBundle a = jacobi(0.3, m), b = jacobi(0.3 + 4.0 * K, m);
  CHECK(b.sn == doctest::Approx(a.sn).epsilon(1e-12));
  CHECK(b.cn == doctest::Approx(a.cn).epsilon(1e-12));
  CHECK(b.am == doctest::Approx(a.am + 2.0 * M_PI).epsilon(1e-12));
  CHECK(b.eps == doctest::Approx(a.eps + 4.0 * complete_E(m)).epsilon(1e-12));
  // m = 0 degenerates to circular functions.
  const JacobiBundle c = jacobi(1.1, 0.0);
  CHECK(c.sn == doctest::Approx(std::sin(1.1)).epsilon(1e-15));
  CHECK(c.dn == 1.0);
}

TEST_CASE("eps is the integral of dn squared") {
  for (double m : {-2.0, 0.3, 0.95}) {
    for (double x : {0.2, 1.7, 6.0}) {
      const double h = 1e-5;
      const double fd = (eps_incomplete(x + h, m) - eps_incomplete(x - h, m)) / (2 * h);
      const double dn = jacobi(x, m).dn;
      CHECK(std::abs(fd - dn * dn) < 1e-8);
    }
  }
}

TEST_CASE("negative parameter transform agrees with the main entry point") {
  const JacobiBundle a = negative_modulus_transform(2.3, -1.7);
  const JacobiBundle b = jacobi(2.3, -1.7);
  CHECK(a.sn == doctest::Approx(b.sn).epsilon(1e-15));
  CHECK(a.eps == doctest::Approx(b.eps).epsilon(1e-15));
  CHECK_THROWS_AS(negative_modulus_transform(1.0, 0.2), DomainError);
  CHECK_THROWS_AS(jacobi(1.0, 1.0), DomainError);
}

TEST_CASE("documented examples") {
  // k = 0.6 at psi = 0.7 against a 12-term series of sn (odd powers to u^23).
  const oracle::Taylor t = oracle::jacobi_series(0.7, 0.36, 24);
  const JacobiBundle j = jacobi(0.7, 0.36);
  CHECK(std::abs(j.sn - t.sn) < 1e-10);
  CHECK(std::abs(j.cn - t.cn) < 1e-10);
  CHECK(std::abs(j.dn - t.dn) < 1e-10);

  CHECK(complete_K(0.5) == doctest::Approx(oracle::legendre_f(M_PI / 2, 0.5)).epsilon(1e-14));

  // K ~ ln(4/k') + (k'^2/4)(ln(4/k') - 1) as k' -> 0; the correction is 2.5e-13 here.
  // 1 - m is exact, so k' is taken from the rounded m.
  const double m1 = 1.0 - 1e-12, kp = std::sqrt(1.0 - m1), L = std::log(4.0 / kp);
  CHECK(complete_K(m1) == doctest::Approx(L + 0.25 * kp * kp * (L - 1.0)).epsilon(1e-9));

  // Hyperbolic degeneration.
  const JacobiBundle h = jacobi(1.3, 1.0 - 1e-12);
  CHECK(h.sn == doctest::Approx(std::tanh(1.3)).epsilon(1e-9));
  CHECK(h.cn == doctest::Approx(1.0 / std::cosh(1.3)).epsilon(1e-9));
  CHECK(h.dn == doctest::Approx(1.0 / std::cosh(1.3)).epsilon(1e-9));
}
