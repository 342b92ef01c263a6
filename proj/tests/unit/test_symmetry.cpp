#include "engel/errors.hpp"
#include "engel/expmap.hpp"
#include "engel/symmetry.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace engel;

namespace {

const Family TL = Family::Timelike;
const Family SL = Family::Spacelike;

bool same_pair(const SymmetricPair& p, const Covector& l, double t) {
  return std::abs(p.lambda.theta - l.theta) + std::abs(p.lambda.c - l.c) + std::abs(p.lambda.alpha - l.alpha) < 1e-8 &&
         p.lambda.branch == l.branch && p.t == t;
}

}  // namespace

TEST_CASE("images are involutions and epsilon3 = epsilon1 epsilon2") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-2, 2);
  for (Family f : {TL, SL}) {
    for (int n = 0; n < 50; ++n) {
      const GroupPoint q{u(rng), u(rng), u(rng), u(rng)};
      for (int i = 0; i <= 3; ++i) CHECK((apply_image(i, apply_image(i, q, f), f).vec() - q.vec()).norm() < 1e-14);
      const GroupPoint a = apply_image(1, apply_image(2, q, f), f);
      CHECK((a.vec() - apply_image(3, q, f).vec()).norm() < 1e-14);
    }
  }
  CHECK_THROWS_AS(apply_image(1, {}, Family::Lightlike), StratumError);
  CHECK_THROWS_AS(apply_image(4, {}, TL), DomainError);
}

TEST_CASE("preimage maps commute with Exp on every stratum, both branches") {
  std::mt19937_64 rng(2);
  for (Stratum s : closed_form_strata()) {
    for (int n = 0; n < 10; ++n) {
      Covector l = sample_covector(s, rng);
      if (n % 2) l = on_branch(l, -1);
      const double t = std::min(3.0, 0.8 * t_supr(l));
      for (int i = 0; i <= 3; ++i) {
        CAPTURE(std::string(to_string(s)));
        CAPTURE(i);
        CHECK(check_commutation(i, l, t) < 1e-8);
      }
    }
  }
}

TEST_CASE("symmetric endpoint equals the endpoint of the integrated symmetric covector") {
  // Independent of the closed forms: both sides from the adaptive integrator.
  std::mt19937_64 rng(3);
  for (Stratum s : {Stratum::TL_Cplus, Stratum::TL_C0, Stratum::SL_C1, Stratum::SL_C3, Stratum::SL_C6}) {
    const Covector l = sample_covector(s, rng);
    const double t = std::min(2.0, 0.8 * t_supr(l));
    for (int i = 0; i <= 3; ++i) {
      const SymmetricPair p = apply_preimage(i, l, t);
      const GroupPoint lhs = oracle::chart_endpoint(p.lambda, p.t);
      const GroupPoint rhs = apply_image(i, oracle::chart_endpoint(l, t), l.causal);
      CHECK((lhs.vec() - rhs.vec()).norm() / std::max(1.0, rhs.vec().norm()) < 1e-8);
    }
  }
}

TEST_CASE("printed spacelike preimage maps do not commute with Exp") {
  std::mt19937_64 rng(4);
  const Covector l = sample_covector(Stratum::SL_C1, rng);
  const double t = 2.0;
  CHECK(check_commutation(1, l, t, SymConvention::Printed) > 1e-3);
  CHECK(check_commutation(3, l, t, SymConvention::Printed) > 1e-3);
  CHECK(check_commutation(2, l, t, SymConvention::Printed) < 1e-8);
  // Timelike maps are convention independent.
  const Covector m = sample_covector(Stratum::TL_Cplus, rng);
  CHECK(check_commutation(1, m, 0.5, SymConvention::Printed) < 1e-8);
}

TEST_CASE("time reversal pattern") {
  CHECK_FALSE(time_reversing(1, TL));
  CHECK(time_reversing(2, TL));
  CHECK(time_reversing(3, TL));
  CHECK(time_reversing(1, SL));
  CHECK(time_reversing(2, SL));
  CHECK_FALSE(time_reversing(3, SL));
  CHECK_FALSE(time_reversing(0, SL));
}

TEST_CASE("fixed-point conditions agree with the maps themselves") {
  // A time-reversing reflection R fixes (lambda, t) exactly when R fixes the
  // covector at t/2. Build such pairs by flowing an R-fixed covector back.
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2, 2), tt(0.05, 3.0);
  int hits = 0;
  for (Family f : {TL, SL}) {
    for (int i = 1; i <= 3; ++i) {
      for (int n = 0; n < 3000; ++n) {
        Covector mu{f, u(rng), u(rng), u(rng), 1};
        if (n % 4 == 3) mu.alpha = 0.0;
        const double t = tt(rng);
        const Covector r = apply_preimage(i, mu, 0.0).lambda;
        if (r.theta != mu.theta) mu.theta = 0.0;
        if (r.c != mu.c) mu.c = 0.0;
        if (r.alpha != mu.alpha) mu.alpha = 0.0;
        if (classify(mu) == Stratum::UNRESOLVED_BOUNDARY) continue;
        const Covector l = time_reversing(i, f) ? vertical_flow(mu, -t / 2) : mu;
        if (classify(l) == Stratum::UNRESOLVED_BOUNDARY || !(t < 0.95 * t_supr(l))) continue;
        REQUIRE(same_pair(apply_preimage(i, l, t), l, t));
        CAPTURE(std::string(to_string(classify(l))));
        CAPTURE(i);
        CHECK(fixed_preimage(i, l, t));
        ++hits;
      }
    }
  }
  CHECK(hits > 10000);

  // Generic pairs are not fixed.
  for (int n = 0; n < 2000; ++n) {
    const Covector l{n % 2 ? TL : SL, u(rng), u(rng), u(rng), 1};
    const double t = tt(rng);
    if (classify(l) == Stratum::UNRESOLVED_BOUNDARY || !(t < 0.95 * t_supr(l))) continue;
    for (int i = 1; i <= 3; ++i) CHECK_FALSE(fixed_preimage(i, l, t));
  }
  CHECK_FALSE(fixed_preimage(0, {TL, 0, 0, 0}, 1.0));
  CHECK_THROWS_AS(fixed_preimage(1, {Family::Lightlike, 0, 0, 0}, 1.0), StratumError);
}

TEST_CASE("midpoint angle on alpha = 0 strata") {
  // theta' = -c, so the midpoint condition is theta - c t / 2 = 0 and the
  // printed theta + c t / 2 = 0 is not fixed.
  const double c = 0.8, t = 1.5;
  const Covector good{TL, 0.5 * c * t, c, 0.0};
  CHECK(fixed_preimage(3, good, t));
  CHECK(same_pair(apply_preimage(3, good, t), good, t));
  const Covector printed{TL, -0.5 * c * t, c, 0.0};
  CHECK_FALSE(same_pair(apply_preimage(3, printed, t), printed, t));
  CHECK_FALSE(fixed_preimage(3, printed, t));

  const Covector c6{SL, 0.5 * c * t, c, 0.0};
  CHECK(fixed_preimage(2, c6, t));
  CHECK(same_pair(apply_preimage(2, c6, t), c6, t));
}

TEST_CASE("fixed images of the endpoint maps") {
  CHECK(fixed_image(2, {1.0, 2.0, 0.0, 3.0}, TL));
  CHECK_FALSE(fixed_image(2, {1.0, 2.0, 0.1, 3.0}, TL));
  CHECK(fixed_image(3, {1.0, 0.0, 2.0, 1.0}, TL));
  CHECK(fixed_image(2, {0.0, 2.0, 1.0, 3.0}, SL));
  CHECK(fixed_image(3, {0.0, 2.0, 0.0, 3.0}, SL));
  for (Family f : {TL, SL}) {
    for (int i = 0; i <= 3; ++i) {
      const GroupPoint q{0.3, -0.2, 0.0, 0.0};
      const GroupPoint p = apply_image(i, q, f);
      CHECK(fixed_image(i, q, f) == ((p.vec() - q.vec()).norm() < 1e-12));
    }
  }
}
