#include "engel/elliptic.hpp"
#include "engel/errors.hpp"
#include "engel/expmap.hpp"
#include "engel/maxwell.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace engel;

namespace {

// C+- with alpha = 1 ties ae to k by ae^4 = 1/(16 k^2 (1 - k^2)).
FParams tl_params(double k2) {
  FParams p;
  p.k2 = k2;
  p.ae = std::pow(16.0 * k2 * (1.0 - k2), -0.25);
  return p;
}

// C2 with ae = 1: alpha = k^2, E = k^2 - 2.
FParams c2_params(double k2) {
  FParams p;
  p.k2 = k2;
  p.alpha = k2;
  p.energy = k2 - 2.0;
  return p;
}

}  // namespace

TEST_CASE("small-p cubic laws") {
  const double p = 1e-3;
  for (double k2 : {0.04, 0.25, 0.64}) {
    const FParams a = tl_params(k2);
    CHECK(eval_f(FFunc::fy, p, a) / (p * p * p) == doctest::Approx(4.0 / 3.0 * k2).epsilon(1e-2));
    const FParams b = c2_params(k2);
    CHECK(eval_f(FFunc::f2, p, b) / (p * p * p) == doctest::Approx(b.alpha * k2 / 3.0).epsilon(1e-2));
  }
  // On C3, alpha/ae^2 = 2 alpha/(E + alpha) = 1 - k2, so alpha^2/(3 ae^4) = (1 - k2)^2/3.
  for (double k2 : {-2.0, 0.0, 0.5}) {
    CHECK(eval_f(FFunc::f3, p, {k2}) / (p * p * p) == doctest::Approx((1 - k2) * (1 - k2) / 3.0).epsilon(1e-2));
  }
  // Normalized f4 ~ p^3/3.
  CHECK(eval_f(FFunc::f4, p, {0.5}) / (p * p * p) == doctest::Approx(1.0 / 3.0).epsilon(1e-2));
}

TEST_CASE("domain checks") {
  const double K = complete_K(0.5);
  CHECK_THROWS_AS(f_y(0.0, 0.5, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(f_y(K, 0.5, 1.0, 1.0), DomainError);
  CHECK_NOTHROW(f_y(0.5 * K, 0.5, 1.0, 1.0));
  CHECK_THROWS_AS(f1(-1.0, 0.5, 1.0, -1.0), DomainError);
  CHECK_NOTHROW(f1(7.0 * K, 0.5, 1.0, -1.0));
  CHECK_THROWS_AS(f3(1.1 * K, 0.5), DomainError);
}

TEST_CASE("printed f4 is negative, its normalization positive") {
  for (double k2 : {0.1, 0.5, 0.9}) {
    const double p = 0.5 * complete_K(k2);
    CHECK(f4(p, k2, F4Sign::Printed) < 0.0);
    CHECK(f4(p, k2) == doctest::Approx(-f4(p, k2, F4Sign::Printed)));
  }
}

TEST_CASE("comparison functions certify positivity") {
  for (int i = 1; i <= 9; ++i) {
    const double k2 = 0.01 * i * i;
    const double K = complete_K(k2);
    CAPTURE(k2);
    const auto a = comparison_check(FFunc::fy, GFunc::fy_weight, tl_params(k2), 0.0, K, 2000);
    CHECK_MESSAGE(a.ok, a.failing);
    CHECK(a.has_printed_slope);
    const auto b = comparison_check(FFunc::f2, GFunc::dn, c2_params(k2), 0.0, K, 2000);
    CHECK_MESSAGE(b.ok, b.failing);
    CHECK(b.printed_slope_agrees);
    const auto c = comparison_check(FFunc::f3, GFunc::cndn, {k2}, 0.0, K, 2000);
    CHECK_MESSAGE(c.ok, c.failing);
    CHECK(c.printed_slope_agrees);
    const auto d = comparison_check(FFunc::f4, GFunc::cn, {k2}, 0.0, K, 2000);
    CHECK_MESSAGE(d.ok, d.failing);
  }
}

TEST_CASE("comparison check names the failing hypothesis") {
  FParams printed{0.5};
  printed.f4_sign = F4Sign::Printed;
  const auto r = comparison_check(FFunc::f4, GFunc::cn, printed, 0.0, complete_K(0.5), 500);
  CHECK_FALSE(r.ok);
  CHECK(r.failing == "(f/g)' >= 0");
  // cn is not positive past K.
  const auto s = comparison_check(FFunc::f4, GFunc::cn, {0.5}, 0.0, 1.5 * complete_K(0.5), 500);
  CHECK(s.failing == "g > 0");
}

TEST_CASE("factorized displays reproduce Exp") {
  std::mt19937_64 rng(8);
  for (Stratum s : {Stratum::TL_Cplus, Stratum::TL_Cminus, Stratum::SL_C1, Stratum::SL_C2, Stratum::SL_C3}) {
    for (int n = 0; n < 20; ++n) {
      Covector l = sample_covector(s, rng);
      if (n % 2) l = on_branch(l, -1);
      const double T = std::min(5.0, 0.9 * t_supr(l));
      for (int j = 1; j <= 6; ++j) {
        const double t = T * j / 6;
        const GroupPoint q = exp_map(l, t);
        const FactorizedXY f = factorized_xy(l, t);
        CAPTURE(std::string(to_string(s)));
        CHECK(std::abs(f.y - q.y) / std::max(1.0, std::abs(q.y)) < 1e-8);
        if (f.x1) CHECK(std::abs(*f.x1 - q.x1) / std::max(1.0, std::abs(q.x1)) < 1e-8);
      }
    }
  }
  CHECK_THROWS_AS(factorized_xy({Family::Spacelike, 0.2, 0.3, 0.0}, 1.0), StratumError);
}

TEST_CASE("energy reading of f2 is the one that factorizes y") {
  std::mt19937_64 rng(9);
  const Covector l = sample_covector(Stratum::SL_C2, rng);
  const RectifiedCoords rc = rectify(l);
  const double t = 0.6 * t_supr(l);
  const FactorizedXY f = factorized_xy(l, t);
  FParams alt = maxwell_params(rc);
  alt.f2_reading = F2Reading::EllipticEps;
  const double y_alt = f.angular * eval_f(FFunc::f2, midpoint(rc, t).p, alt);
  CHECK(std::abs(f.y - exp_map(l, t).y) < 1e-10);
  CHECK(std::abs(y_alt - exp_map(l, t).y) > 1e-4);
}

TEST_CASE("f1 roots") {
  std::mt19937_64 rng(11);
  const FParams prm = maxwell_params(rectify(sample_covector(Stratum::SL_C1, rng)));
  const double K = complete_K(prm.k2);
  const auto roots = roots_f1(prm, 8 * K);
  REQUIRE_FALSE(roots.empty());
  for (double r : roots) {
    CHECK(std::abs(eval_f(FFunc::f1, r, prm)) < 1e-9);
    CHECK(eval_f(FFunc::f1, r - 1e-9, prm) * eval_f(FFunc::f1, r + 1e-9, prm) <= 0.0);
  }
  for (std::size_t i = 1; i < roots.size(); ++i) CHECK(roots[i] > roots[i - 1]);
  CHECK(roots[0] > 2 * K);
  const Scan sc = scan_f(FFunc::f1, prm, 0.0, 8 * K, K / 2048);
  CHECK(*sc.first_root == doctest::Approx(roots[0]).epsilon(1e-12));
  CHECK(sc.bracket <= 1e-10);
}

TEST_CASE("Maxwell reports") {
  std::mt19937_64 rng(10);
  const MaxwellReport a = maxwell_times(sample_covector(Stratum::TL_Cplus, rng));
  CHECK(a.f_name == "f_y");
  CHECK(*a.max2_empty);
  CHECK(a.no_bound);
  CHECK(std::isinf(a.cut_bound));

  const Covector c2 = sample_covector(Stratum::SL_C2, rng);
  const MaxwellReport b = maxwell_times(c2);
  CHECK(*b.max1_empty);
  CHECK(b.cut_bound == doctest::Approx(t_supr(c2)));

  const Covector c1 = sample_covector(Stratum::SL_C1, rng);
  const MaxwellReport c = maxwell_times(c1);
  const RectifiedCoords rc = rectify(c1);
  REQUIRE(c.t_max1);
  CHECK(*c.t_max2 == doctest::Approx(4 * complete_K(rc.k2) / rc.ae));
  CHECK(*c.t_max2 < *c.t_max1);
  CHECK(c.cut_bound == *c.t_max2);
  // x1 vanishes at t_max2 on C1.
  CHECK(std::abs(exp_map(c1, *c.t_max2).x1) < 1e-8);

  CHECK_THROWS_AS(maxwell_times({Family::Timelike, 0.1, 0.0, 0.0}), StratumError);
  CHECK(cut_time_bound({Family::Timelike, 0.1, 0.0, 0.0}).no_bound);
}

TEST_CASE("C1 cut bound at k = 1/2, ae = 1") {
  // k2 = (E + a)/(E - a) = 1/4 and (E - a)/2 = 1 give a = -3/4, E = 5/4.
  const double a = -0.75, E = 1.25;
  const double c = std::sqrt(2.0 * (E + a * std::cosh(0.0)));
  const Covector l{Family::Spacelike, 0.0, c, a};
  REQUIRE(classify(l) == Stratum::SL_C1);
  CHECK(cut_time_bound(l).value == doctest::Approx(4.0 * complete_K(0.25)));
}
